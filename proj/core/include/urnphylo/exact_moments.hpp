#ifndef URNPHYLO_EXACT_MOMENTS_HPP
#define URNPHYLO_EXACT_MOMENTS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "urnphylo/phylo_tree.hpp"
#include "urnphylo/rational.hpp"
#include "urnphylo/tree_models.hpp"

namespace urnphylo {

struct MomentSet {
  int n = 0;
  Model model = Model::YHK;
  Rational e_a, e_b, var_a, var_b, cov_ab;
};

// Exact joint law of terminal statistics, as rationals.
struct JointPmf {
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> ab;
  std::map<std::vector<std::int64_t>, Rational> edge_vectors;

  Rational total_ab() const;
  std::string to_csv() const;  // a,b,p_num/p_den rows
};

// Closed-form finite-n moments; valid for n >= 7, otherwise throws
// std::out_of_range (use enumerate_exact below for small n).
MomentSet yhk_moments(int n);
MomentSet pda_moments(int n);

// Exhaustive shape-history enumeration oracle. Collapses histories by
// canonical shape with rational multiplicity weights; independent of the urn
// machinery. Throws Error when n exceeds the cap.
JointPmf enumerate_exact(Model model, const PhyloTree& seed_tree, int n, int cap = 12);

MomentSet moments_from_pmf(const JointPmf& pmf, Model model, int n);

// Canonical label-free shape string; unrooted trees are canonicalized over
// all top-vertex choices.
std::string shape_key(const PhyloTree& tree);

struct UnrootedSplit {
  Rational p_alpha1;                 // P(E1) = 4/5
  Rational p_alpha2;                 // P(E2) = 1/5
  std::array<std::int64_t, 4> alpha1;  // (4,0,2,0)
  std::array<std::int64_t, 4> alpha2;  // (0,6,0,0)
};

// The two possible pendant type vectors of a 6-leaf unrooted tree and their
// YHK probabilities from the 2-leaf start.
UnrootedSplit unrooted_initial_split();

}  // namespace urnphylo

#endif
