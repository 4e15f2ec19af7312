#include "urnphylo/exact_moments.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace urnphylo {

Rational JointPmf::total_ab() const {
  Rational t = 0;
  for (const auto& [key, p] : ab) t += p;
  return t;
}

std::string JointPmf::to_csv() const {
  std::ostringstream out;
  out << "a,b,p\n";
  for (const auto& [key, p] : ab)
    out << key.first << ',' << key.second << ',' << rational_to_string(p) << '\n';
  return out.str();
}

namespace {

std::string canon_away(const PhyloTree& t, std::uint32_t w, std::int32_t from) {
  std::vector<std::string> parts;
  const auto& nd = t.node(w);
  if (nd.parent >= 0 && nd.parent != from)
    parts.push_back(canon_away(t, static_cast<std::uint32_t>(nd.parent), static_cast<std::int32_t>(w)));
  for (int i = 0; i < nd.n_children; ++i)
    if (nd.children[i] != from)
      parts.push_back(canon_away(t, static_cast<std::uint32_t>(nd.children[i]),
                                 static_cast<std::int32_t>(w)));
  if (parts.empty()) return "*";
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  s += ')';
  return s;
}

}  // namespace

std::string shape_key(const PhyloTree& tree) {
  if (tree.root_kind() == RootKind::Rooted) {
    // Hang the shape off the root's single child; the root vertex itself
    // carries no shape information.
    std::uint32_t top = static_cast<std::uint32_t>(tree.node(0).children[0]);
    return "r" + canon_away(tree, top, 0);
  }
  std::string best;
  for (std::uint32_t v = 0; v < tree.node_count(); ++v) {
    if (tree.node(v).is_leaf()) continue;
    std::string s = canon_away(tree, v, -2);
    if (best.empty() || s < best) best = s;
  }
  return "u" + best;
}

JointPmf enumerate_exact(Model model, const PhyloTree& seed_tree, int n, int cap) {
  const int m = static_cast<int>(seed_tree.leaf_count());
  if (n < m) throw Error("target leaf count below seed size");
  if (n > cap) throw Error("enumeration target exceeds cap of " + std::to_string(cap));

  std::map<std::string, std::pair<Rational, PhyloTree>> states;
  states.emplace(shape_key(seed_tree), std::make_pair(Rational(1), seed_tree));

  for (int k = m; k < n; ++k) {
    std::map<std::string, std::pair<Rational, PhyloTree>> next;
    for (const auto& [key, entry] : states) {
      const auto& [p, tree] = entry;
      std::vector<EdgeRef> choices;
      if (model == Model::YHK) {
        for (std::uint32_t i = 0; i < tree.leaf_count(); ++i)
          choices.push_back(tree.pendant_edge(i));
      } else {
        choices = tree.edges();
      }
      const Rational w = p / Rational(static_cast<int>(choices.size()));
      for (EdgeRef e : choices) {
        PhyloTree child = tree;
        child.attach_leaf(e, child.max_label() + 1);
        std::string ck = shape_key(child);
        auto it = next.find(ck);
        if (it == next.end())
          next.emplace(ck, std::make_pair(w, std::move(child)));
        else
          it->second.first += w;
      }
    }
    states = std::move(next);
  }

  JointPmf pmf;
  for (const auto& [key, entry] : states) {
    const auto& [p, tree] = entry;
    pmf.ab[{tree.count_pitchforks(), tree.count_cherries()}] += p;
    try {
      EdgeTypeVector v = model == Model::YHK ? tree.classify_pendant_edges()
                                             : tree.classify_all_edges();
      pmf.edge_vectors[v.counts] += p;
    } catch (const ClassificationUndefinedError&) {
      // unrooted n < 6: no edge-type law
    }
  }
  return pmf;
}

MomentSet moments_from_pmf(const JointPmf& pmf, Model model, int n) {
  MomentSet ms;
  ms.n = n;
  ms.model = model;
  Rational ea = 0, eb = 0, eaa = 0, ebb = 0, eab = 0;
  for (const auto& [key, p] : pmf.ab) {
    Rational a = key.first, b = key.second;
    ea += a * p;
    eb += b * p;
    eaa += a * a * p;
    ebb += b * b * p;
    eab += a * b * p;
  }
  ms.e_a = ea;
  ms.e_b = eb;
  ms.var_a = eaa - ea * ea;
  ms.var_b = ebb - eb * eb;
  ms.cov_ab = eab - ea * eb;
  return ms;
}

MomentSet yhk_moments(int n) {
  if (n < 7)
    throw std::out_of_range(
        "closed-form YHK moments require n >= 7; use enumerate_exact for smaller n");
  MomentSet ms;
  ms.n = n;
  ms.model = Model::YHK;
  ms.e_a = Rational(n, 6);
  ms.e_b = Rational(n, 3);
  ms.var_a = Rational(23 * static_cast<std::int64_t>(n), 420);
  ms.var_b = Rational(2 * static_cast<std::int64_t>(n), 45);
  ms.cov_ab = Rational(-static_cast<std::int64_t>(n), 45);
  return ms;
}

MomentSet pda_moments(int n) {
  if (n < 7)
    throw std::out_of_range(
        "closed-form PDA moments require n >= 7; use enumerate_exact for smaller n");
  MomentSet ms;
  ms.n = n;
  ms.model = Model::PDA;
  const Rational N = n;
  ms.e_b = N * (N - 1) / (2 * (2 * N - 3));
  ms.e_a = N * (N - 1) * (N - 2) / (2 * (2 * N - 3) * (2 * N - 5));
  ms.var_b =
      N * (N - 1) * (N - 2) * (N - 3) / (2 * (2 * N - 3) * (2 * N - 3) * (2 * N - 5));
  ms.var_a = Rational(3) * (4 * N * N * N - 40 * N * N + 123 * N - 110) /
             (2 * (2 * N - 5) * (2 * N - 7) * (2 * N - 9)) * ms.var_b;
  ms.cov_ab = -ms.var_b / (2 * N - 7);
  return ms;
}

UnrootedSplit unrooted_initial_split() {
  return UnrootedSplit{Rational(4, 5), Rational(1, 5), {4, 0, 2, 0}, {0, 6, 0, 0}};
}

}  // namespace urnphylo
