#include "urnphylo/phylo_tree.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace urnphylo {

std::int64_t EdgeTypeVector::sum() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::uint32_t PhyloTree::new_node() {
  nodes_.emplace_back();
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

PhyloTree PhyloTree::two_leaf() { return from_newick("(1,2);"); }

PhyloTree PhyloTree::rooted_caterpillar(std::uint32_t n) {
  if (n < 2) throw Error("caterpillar needs at least 2 leaves");
  std::string s = "(1,2)";
  for (std::uint32_t k = 3; k <= n; ++k) s = "(" + s + "," + std::to_string(k) + ")";
  return from_newick(s + ";");
}

PhyloTree PhyloTree::unrooted_star() { return from_newick("(1,2,3);"); }

bool PhyloTree::is_pendant(EdgeRef e) const {
  if (e.child == 0 || e.child >= node_count()) throw InvalidEdgeError("unknown edge");
  return nodes_[e.child].is_leaf();
}

std::vector<EdgeRef> PhyloTree::edges() const {
  std::vector<EdgeRef> out;
  out.reserve(edge_count());
  for (std::uint32_t i = 1; i < node_count(); ++i) out.push_back(EdgeRef{i});
  return out;
}

EdgeRef PhyloTree::pendant_edge_of_taxon(std::uint32_t label) const {
  for (std::uint32_t v : leaf_nodes_)
    if (nodes_[v].label == label) return EdgeRef{v};
  throw InvalidEdgeError("no leaf with label " + std::to_string(label));
}

void PhyloTree::attach_leaf(EdgeRef e, std::uint32_t label) {
  if (e.child == 0 || e.child >= node_count()) throw InvalidEdgeError("unknown edge");
  if (label == 0) throw DuplicateTaxonError("taxon labels must be positive");
  if (labels_.count(label)) throw DuplicateTaxonError("duplicate taxon " + std::to_string(label));

  const std::uint32_t c = e.child;
  const std::int32_t u = nodes_[c].parent;
  const std::uint32_t w = new_node();
  const std::uint32_t x = new_node();

  nodes_[w].parent = u;
  nodes_[w].children = {static_cast<std::int32_t>(c), static_cast<std::int32_t>(x), -1};
  nodes_[w].n_children = 2;
  for (int i = 0; i < nodes_[u].n_children; ++i)
    if (nodes_[u].children[i] == static_cast<std::int32_t>(c))
      nodes_[u].children[i] = static_cast<std::int32_t>(w);
  nodes_[c].parent = static_cast<std::int32_t>(w);
  nodes_[x].parent = static_cast<std::int32_t>(w);
  nodes_[x].label = label;

  leaf_nodes_.push_back(x);
  labels_.insert(label);
  max_label_ = std::max(max_label_, label);
  ++leaf_count_;
}

PhyloTree PhyloTree::detached(std::uint32_t label) const {
  if (!labels_.count(label)) throw InvalidEdgeError("no leaf with label " + std::to_string(label));
  if (leaf_count_ <= 2 || (root_kind_ == RootKind::Unrooted && leaf_count_ <= 3))
    throw Error("tree too small to detach a leaf");

  PhyloTree t = *this;
  const std::uint32_t x = t.pendant_edge_of_taxon(label).child;
  const std::int32_t w = t.nodes_[x].parent;
  const std::int32_t u = t.nodes_[w].parent;
  if (u < 0) throw Error("cannot detach a leaf hanging directly off the top vertex");
  std::int32_t s = -1;
  for (int i = 0; i < t.nodes_[w].n_children; ++i)
    if (t.nodes_[w].children[i] != static_cast<std::int32_t>(x)) s = t.nodes_[w].children[i];
  for (int i = 0; i < t.nodes_[u].n_children; ++i)
    if (t.nodes_[u].children[i] == w) t.nodes_[u].children[i] = s;
  t.nodes_[s].parent = u;
  t.labels_.erase(label);
  t.leaf_nodes_.erase(std::find(t.leaf_nodes_.begin(), t.leaf_nodes_.end(), x));
  --t.leaf_count_;
  // Compact the arena by a serialize/parse round trip.
  return from_newick(t.to_newick());
}

void PhyloTree::neighbors(std::uint32_t v, std::uint32_t* out, int* n_out) const {
  int n = 0;
  if (nodes_[v].parent >= 0) out[n++] = static_cast<std::uint32_t>(nodes_[v].parent);
  for (int i = 0; i < nodes_[v].n_children; ++i)
    out[n++] = static_cast<std::uint32_t>(nodes_[v].children[i]);
  *n_out = n;
}

std::vector<std::uint32_t> PhyloTree::leaves_below() const {
  std::vector<std::uint32_t> lb(node_count(), 0);
  // Iterative post-order; trees can be deep (caterpillars).
  std::vector<std::pair<std::uint32_t, int>> stack{{0u, 0}};
  while (!stack.empty()) {
    auto& [v, stage] = stack.back();
    if (stage < nodes_[v].n_children) {
      std::uint32_t c = static_cast<std::uint32_t>(nodes_[v].children[stage]);
      ++stage;
      stack.push_back({c, 0});
    } else {
      if (nodes_[v].is_leaf()) lb[v] = 1;
      if (nodes_[v].parent >= 0) lb[nodes_[v].parent] += lb[v];
      stack.pop_back();
    }
  }
  return lb;
}

std::int64_t PhyloTree::count_cherries() const {
  const auto lb = leaves_below();
  std::int64_t b = 0;
  for (std::uint32_t c = 1; c < node_count(); ++c) {
    if (lb[c] == 2) ++b;
    if (root_kind_ == RootKind::Unrooted && leaf_count_ - lb[c] == 2) ++b;
  }
  return b;
}

std::int64_t PhyloTree::count_pitchforks() const {
  const auto lb = leaves_below();
  std::int64_t a = 0;
  for (std::uint32_t c = 1; c < node_count(); ++c) {
    if (lb[c] == 3) ++a;
    if (root_kind_ == RootKind::Unrooted && leaf_count_ - lb[c] == 3) ++a;
  }
  return a;
}

void PhyloTree::check_classifiable() const {
  if (root_kind_ == RootKind::Rooted) {
    if (leaf_count_ < 2) throw ClassificationUndefinedError("rooted classification needs n >= 2");
  } else if (leaf_count_ < 6) {
    throw ClassificationUndefinedError("edge types are undefined for unrooted trees with n < 6");
  }
}

int PhyloTree::classify_edge(EdgeRef e) const {
  check_classifiable();
  if (e.child == 0 || e.child >= node_count()) throw InvalidEdgeError("unknown edge");

  std::uint32_t nb[4];
  int nn = 0;
  const std::uint32_t c = e.child;
  const std::uint32_t u = static_cast<std::uint32_t>(nodes_[c].parent);

  auto is_leaf = [&](std::uint32_t v) { return nodes_[v].is_leaf(); };
  // Two leaves hanging off v on the side away from `from`.
  auto cherry_away_from = [&](std::uint32_t v, std::uint32_t from) {
    if (is_leaf(v)) return false;
    neighbors(v, nb, &nn);
    int leaves = 0, others = 0;
    for (int i = 0; i < nn; ++i) {
      if (nb[i] == from) continue;
      ++others;
      if (is_leaf(nb[i])) ++leaves;
    }
    return others == 2 && leaves == 2;
  };
  auto has_leaf_besides = [&](std::uint32_t v, std::uint32_t from) {
    if (is_leaf(v)) return false;
    neighbors(v, nb, &nn);
    for (int i = 0; i < nn; ++i)
      if (nb[i] != from && is_leaf(nb[i])) return true;
    return false;
  };

  if (nodes_[c].is_leaf()) {
    // Pendant edge: look at the other two neighbours of the interior end.
    std::uint32_t others[3];
    int no = 0;
    neighbors(u, nb, &nn);
    for (int i = 0; i < nn; ++i)
      if (nb[i] != c) others[no++] = nb[i];
    std::int32_t leaf_nb = -1, nonleaf_nb = -1;
    for (int i = 0; i < no; ++i)
      (is_leaf(others[i]) ? leaf_nb : nonleaf_nb) = static_cast<std::int32_t>(others[i]);
    if (leaf_nb >= 0) {
      // In a cherry; dependent iff the cherry hangs next to a third leaf.
      bool dependent = nonleaf_nb >= 0 &&
                       has_leaf_besides(static_cast<std::uint32_t>(nonleaf_nb), u);
      return dependent ? 1 : 2;
    }
    for (int i = 0; i < no; ++i)
      if (cherry_away_from(others[i], u)) return 3;
    return 4;
  }

  // Internal edge: type 5 iff one side is an independent cherry.
  if (cherry_away_from(c, u)) return has_leaf_besides(u, c) ? 6 : 5;
  if (cherry_away_from(u, c)) return has_leaf_besides(c, u) ? 6 : 5;
  return 6;
}

EdgeTypeVector PhyloTree::classify_pendant_edges() const {
  check_classifiable();
  EdgeTypeVector v{std::vector<std::int64_t>(4, 0)};
  for (std::uint32_t leaf : leaf_nodes_) ++v.counts[classify_edge(EdgeRef{leaf}) - 1];
  return v;
}

EdgeTypeVector PhyloTree::classify_all_edges() const {
  check_classifiable();
  EdgeTypeVector v{std::vector<std::int64_t>(6, 0)};
  for (std::uint32_t c = 1; c < node_count(); ++c) ++v.counts[classify_edge(EdgeRef{c}) - 1];
  return v;
}

PhyloTree PhyloTree::unroot() const {
  if (root_kind_ != RootKind::Rooted) throw Error("tree is already unrooted");
  if (leaf_count_ < 3) throw Error("unrooting needs at least 3 leaves");

  // Adjacency without the root; the root's child becomes degree two and is
  // suppressed.
  std::vector<std::vector<std::uint32_t>> adj(node_count());
  for (std::uint32_t c = 1; c < node_count(); ++c) {
    std::uint32_t p = static_cast<std::uint32_t>(nodes_[c].parent);
    adj[c].push_back(p);
    adj[p].push_back(c);
  }
  const std::uint32_t r = static_cast<std::uint32_t>(nodes_[0].children[0]);
  adj[r].erase(std::find(adj[r].begin(), adj[r].end(), 0u));
  const std::uint32_t a = adj[r][0], b = adj[r][1];
  std::replace(adj[a].begin(), adj[a].end(), r, b);
  std::replace(adj[b].begin(), adj[b].end(), r, a);

  std::uint32_t top = nodes_[a].is_leaf() ? b : a;

  PhyloTree t;
  t.root_kind_ = RootKind::Unrooted;
  std::vector<std::int32_t> remap(node_count(), -1);
  // DFS from the new top, assigning arena ids with the top at index 0.
  std::vector<std::pair<std::uint32_t, std::int32_t>> stack{{top, -1}};
  while (!stack.empty()) {
    auto [v, parent_new] = stack.back();
    stack.pop_back();
    if (remap[v] >= 0) continue;
    std::uint32_t id = t.new_node();
    remap[v] = static_cast<std::int32_t>(id);
    t.nodes_[id].parent = parent_new;
    t.nodes_[id].label = nodes_[v].label;
    if (parent_new >= 0) {
      auto& pnode = t.nodes_[parent_new];
      pnode.children[pnode.n_children++] = static_cast<std::int32_t>(id);
    }
    if (nodes_[v].is_leaf()) {
      t.leaf_nodes_.push_back(id);
      t.labels_.insert(nodes_[v].label);
      t.max_label_ = std::max(t.max_label_, nodes_[v].label);
      ++t.leaf_count_;
    }
    for (std::uint32_t w : adj[v])
      if (remap[w] < 0) stack.push_back({w, static_cast<std::int32_t>(id)});
  }
  return t;
}

namespace {

struct ParsedNode {
  std::vector<std::size_t> children;
  std::uint32_t label = 0;
};

struct NewickParser {
  const std::string& text;
  std::size_t pos = 0;
  std::vector<ParsedNode> nodes;

  explicit NewickParser(const std::string& t) : text(t) {}

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }

  std::size_t parse_node() {
    if (peek() == '(') {
      ++pos;
      ParsedNode n;
      n.children.push_back(parse_node());
      while (peek() == ',') {
        ++pos;
        n.children.push_back(parse_node());
      }
      expect(')');
      nodes.push_back(n);
      return nodes.size() - 1;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected '(' or a taxon label", pos);
    std::uint64_t label = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      label = label * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (label > 0xFFFFFFFFULL) throw ParseError("taxon label too large", pos);
      ++pos;
    }
    if (label == 0) throw ParseError("taxon labels must be positive", pos);
    ParsedNode n;
    n.label = static_cast<std::uint32_t>(label);
    nodes.push_back(n);
    return nodes.size() - 1;
  }
};

}  // namespace

PhyloTree PhyloTree::from_newick(const std::string& text) {
  NewickParser p(text);
  std::size_t top = p.parse_node();
  p.expect(';');
  if (p.pos != text.size()) throw ParseError("trailing characters", p.pos);

  const auto& pn = p.nodes;
  if (pn[top].children.empty()) throw ParseError("a tree needs at least two leaves", 0);
  std::size_t top_arity = pn[top].children.size();
  if (top_arity != 2 && top_arity != 3)
    throw ParseError("top-level vertex must have 2 (rooted) or 3 (unrooted) children", 0);

  PhyloTree t;
  t.root_kind_ = top_arity == 2 ? RootKind::Rooted : RootKind::Unrooted;

  std::int32_t first_parent = -1;
  if (t.root_kind_ == RootKind::Rooted) {
    std::uint32_t rho = t.new_node();  // the degree-one root
    first_parent = static_cast<std::int32_t>(rho);
  }

  // DFS over the parsed structure; enforce binary interior vertices.
  std::vector<std::pair<std::size_t, std::int32_t>> stack{{top, first_parent}};
  while (!stack.empty()) {
    auto [pi, parent] = stack.back();
    stack.pop_back();
    std::uint32_t id = t.new_node();
    t.nodes_[id].parent = parent;
    if (parent >= 0) {
      auto& par = t.nodes_[parent];
      if (par.n_children >= 3) throw ParseError("vertex with too many children", 0);
      par.children[par.n_children++] = static_cast<std::int32_t>(id);
    }
    const ParsedNode& src = pn[pi];
    if (src.label != 0) {
      if (t.labels_.count(src.label))
        throw DuplicateTaxonError("duplicate taxon " + std::to_string(src.label));
      t.nodes_[id].label = src.label;
      t.labels_.insert(src.label);
      t.max_label_ = std::max(t.max_label_, src.label);
      t.leaf_nodes_.push_back(id);
      ++t.leaf_count_;
    } else {
      std::size_t arity = src.children.size();
      if (pi == top ? (arity != top_arity) : (arity != 2))
        throw ParseError("interior vertices must be binary", 0);
      // Reverse order so children come out in source order.
      for (auto it = src.children.rbegin(); it != src.children.rend(); ++it)
        stack.push_back({*it, static_cast<std::int32_t>(id)});
    }
  }

  if (t.root_kind_ == RootKind::Rooted) {
    if (t.leaf_count_ < 2) throw ParseError("rooted tree needs n >= 2", 0);
  } else if (t.leaf_count_ < 3) {
    throw ParseError("unrooted tree needs n >= 3", 0);
  }
  return t;
}

std::string PhyloTree::to_newick() const {
  // Smallest descendant label per node, for canonical child ordering.
  std::vector<std::uint32_t> min_label(node_count(), 0xFFFFFFFFu);
  std::vector<std::pair<std::uint32_t, int>> stack{{0u, 0}};
  while (!stack.empty()) {
    auto& [v, stage] = stack.back();
    if (stage < nodes_[v].n_children) {
      std::uint32_t c = static_cast<std::uint32_t>(nodes_[v].children[stage]);
      ++stage;
      stack.push_back({c, 0});
    } else {
      if (nodes_[v].is_leaf()) min_label[v] = nodes_[v].label;
      if (nodes_[v].parent >= 0)
        min_label[nodes_[v].parent] = std::min(min_label[nodes_[v].parent], min_label[v]);
      stack.pop_back();
    }
  }

  std::string out;
  auto emit = [&](auto&& self, std::uint32_t v) -> void {
    if (nodes_[v].is_leaf()) {
      out += std::to_string(nodes_[v].label);
      return;
    }
    std::array<std::uint32_t, 3> kids;
    int nk = nodes_[v].n_children;
    for (int i = 0; i < nk; ++i) kids[i] = static_cast<std::uint32_t>(nodes_[v].children[i]);
    std::sort(kids.begin(), kids.begin() + nk,
              [&](std::uint32_t a, std::uint32_t b) { return min_label[a] < min_label[b]; });
    out += '(';
    for (int i = 0; i < nk; ++i) {
      if (i) out += ',';
      self(self, kids[i]);
    }
    out += ')';
  };

  std::uint32_t start = root_kind_ == RootKind::Rooted
                            ? static_cast<std::uint32_t>(nodes_[0].children[0])
                            : 0u;
  emit(emit, start);
  out += ';';
  return out;
}

void PhyloTree::validate() const {
  if (node_count() == 0) throw Error("empty tree");
  if (nodes_[0].parent != -1) throw Error("node 0 must be parentless");
  std::uint32_t leaves = 0;
  for (std::uint32_t v = 0; v < node_count(); ++v) {
    const Node& n = nodes_[v];
    if (v != 0 && n.parent < 0) throw Error("multiple parentless nodes");
    if (n.is_leaf()) {
      if (n.n_children != 0) throw Error("leaf with children");
      ++leaves;
    } else if (v == 0) {
      int expected = root_kind_ == RootKind::Rooted ? 1 : 3;
      if (n.n_children != expected) throw Error("top vertex has wrong degree");
    } else if (n.n_children != 2) {
      throw Error("interior vertex is not binary");
    }
    for (int i = 0; i < n.n_children; ++i)
      if (nodes_[n.children[i]].parent != static_cast<std::int32_t>(v))
        throw Error("parent/child link mismatch");
  }
  if (leaves != leaf_count_ || labels_.size() != leaf_count_)
    throw Error("leaf bookkeeping mismatch");
  std::uint32_t expected_edges =
      root_kind_ == RootKind::Rooted ? 2 * leaf_count_ - 1 : 2 * leaf_count_ - 3;
  if (edge_count() != expected_edges) throw Error("edge count invariant violated");
  // Connectivity: every node reachable from node 0 through child links.
  std::vector<char> seen(node_count(), 0);
  std::vector<std::uint32_t> stack{0};
  std::uint32_t visited = 0;
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    if (seen[v]) throw Error("cycle detected");
    seen[v] = 1;
    ++visited;
    for (int i = 0; i < nodes_[v].n_children; ++i)
      stack.push_back(static_cast<std::uint32_t>(nodes_[v].children[i]));
  }
  if (visited != node_count()) throw Error("disconnected arena");
}

}  // namespace urnphylo
