#ifndef URNPHYLO_TREE_MODELS_HPP
#define URNPHYLO_TREE_MODELS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "urnphylo/phylo_tree.hpp"
#include "urnphylo/rng.hpp"

namespace urnphylo {

enum class Model { YHK, PDA };

struct ProcessKind {
  Model model = Model::YHK;
  RootKind rooting = RootKind::Rooted;
};

std::string model_name(Model m);

// One growth step: which edge was subdivided and its E1..E6 type at
// selection time (0 when classification is undefined, i.e. unrooted n < 6).
struct GrowthStep {
  std::uint32_t edge_child = 0;
  int edge_type = 0;
};

struct GrowthTrace {
  std::string seed_newick;
  Model model = Model::YHK;
  std::vector<GrowthStep> steps;
  std::uint32_t terminal_leaves = 0;

  std::string to_jsonl() const;
  static GrowthTrace from_jsonl(const std::string& text);
};

// Attaches the next taxon at a uniformly chosen pendant edge (YHK) or at a
// uniformly chosen edge (PDA). Returns the chosen edge and its type.
std::pair<EdgeRef, int> yhk_step(PhyloTree& tree, RngStream& rng);
std::pair<EdgeRef, int> pda_step(PhyloTree& tree, RngStream& rng);

struct GrowthResult {
  PhyloTree tree;
  GrowthTrace trace;
};

// Grows seed (m leaves) to n leaves; deterministic given (seed, replicate_id).
GrowthResult generate(ProcessKind kind, const PhyloTree& seed_tree, std::uint32_t n,
                      std::uint64_t rng_seed, std::uint64_t replicate_id);

// Reconstructs the terminal tree of a trace.
PhyloTree replay(const GrowthTrace& trace);

// Row of the replacement matrix for the given edge type: Eq-style deltas of
// the pendant 4-vector (full = false) or the full 6-vector (full = true).
std::vector<int> edge_type_delta(int edge_type, bool full);

}  // namespace urnphylo

#endif
