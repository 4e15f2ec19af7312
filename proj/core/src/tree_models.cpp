#include "urnphylo/tree_models.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

namespace urnphylo {

std::string model_name(Model m) { return m == Model::YHK ? "yhk" : "pda"; }

namespace {

// Pendant edge-type dynamics, rows indexed by the drawn type 1..4.
constexpr int kPendantDelta[4][4] = {
    {0, 0, 0, 1},
    {2, -2, 1, 0},
    {-2, 4, -1, 0},
    {0, 2, 0, -1},
};

// Full edge-type dynamics, rows 1..6; rows 5 and 6 repeat rows 2 and 1.
constexpr int kFullDelta[6][6] = {
    {0, 0, 0, 1, 0, 1},
    {2, -2, 1, 0, -1, 2},
    {-2, 4, -1, 0, 2, -1},
    {0, 2, 0, -1, 1, 0},
    {2, -2, 1, 0, -1, 2},
    {0, 0, 0, 1, 0, 1},
};

int safe_edge_type(const PhyloTree& tree, EdgeRef e) {
  if (tree.root_kind() == RootKind::Unrooted && tree.leaf_count() < 6) return 0;
  return tree.classify_edge(e);
}

}  // namespace

std::vector<int> edge_type_delta(int edge_type, bool full) {
  int d = full ? 6 : 4;
  if (edge_type < 1 || edge_type > d)
    throw std::out_of_range("edge type " + std::to_string(edge_type) + " out of range for " +
                            (full ? std::string("full") : std::string("pendant-only")) + " model");
  std::vector<int> row(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) row[j] = full ? kFullDelta[edge_type - 1][j] : kPendantDelta[edge_type - 1][j];
  return row;
}

std::pair<EdgeRef, int> yhk_step(PhyloTree& tree, RngStream& rng) {
  const auto& leaves = tree.leaf_nodes();
  EdgeRef e = EdgeRef{leaves[rng.uniform_below(leaves.size())]};
  int type = safe_edge_type(tree, e);
  tree.attach_leaf(e, tree.max_label() + 1);
  return {e, type};
}

std::pair<EdgeRef, int> pda_step(PhyloTree& tree, RngStream& rng) {
  // Edges biject with node indices 1..node_count-1.
  EdgeRef e = EdgeRef{1 + static_cast<std::uint32_t>(rng.uniform_below(tree.edge_count()))};
  int type = safe_edge_type(tree, e);
  tree.attach_leaf(e, tree.max_label() + 1);
  return {e, type};
}

GrowthResult generate(ProcessKind kind, const PhyloTree& seed_tree, std::uint32_t n,
                      std::uint64_t rng_seed, std::uint64_t replicate_id) {
  if (seed_tree.root_kind() != kind.rooting)
    throw ConfigError("seed tree rooting does not match the requested process");
  if (seed_tree.leaf_count() > n)
    throw ConfigError("terminal leaf count " + std::to_string(n) +
                      " is smaller than the seed tree");

  GrowthResult out{seed_tree, {}};
  out.trace.seed_newick = seed_tree.to_newick();
  out.trace.model = kind.model;
  RngStream rng = RngStream::for_replicate(rng_seed, replicate_id);
  while (out.tree.leaf_count() < n) {
    auto [e, type] =
        kind.model == Model::YHK ? yhk_step(out.tree, rng) : pda_step(out.tree, rng);
    out.trace.steps.push_back({e.child, type});
  }
  out.trace.terminal_leaves = n;
  return out;
}

PhyloTree replay(const GrowthTrace& trace) {
  PhyloTree tree = PhyloTree::from_newick(trace.seed_newick);
  for (const GrowthStep& s : trace.steps) tree.attach_leaf(EdgeRef{s.edge_child}, tree.max_label() + 1);
  if (tree.leaf_count() != trace.terminal_leaves)
    throw Error("trace terminal leaf count mismatch");
  return tree;
}

std::string GrowthTrace::to_jsonl() const {
  std::ostringstream out;
  nlohmann::json header{{"seed", seed_newick},
                        {"model", model_name(model)},
                        {"terminal_leaves", terminal_leaves}};
  out << header.dump() << '\n';
  for (const GrowthStep& s : steps)
    out << nlohmann::json{{"edge", s.edge_child}, {"type", s.edge_type}}.dump() << '\n';
  return out.str();
}

GrowthTrace GrowthTrace::from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  GrowthTrace t;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    if (!have_header) {
      t.seed_newick = j.at("seed").get<std::string>();
      t.model = j.at("model").get<std::string>() == "yhk" ? Model::YHK : Model::PDA;
      t.terminal_leaves = j.at("terminal_leaves").get<std::uint32_t>();
      have_header = true;
    } else {
      t.steps.push_back({j.at("edge").get<std::uint32_t>(), j.at("type").get<int>()});
    }
  }
  if (!have_header) throw Error("empty growth trace");
  return t;
}

}  // namespace urnphylo
