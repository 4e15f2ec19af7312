#ifndef URNPHYLO_MC_HARNESS_HPP
#define URNPHYLO_MC_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "urnphylo/phylo_tree.hpp"
#include "urnphylo/stats.hpp"
#include "urnphylo/tree_models.hpp"

namespace urnphylo {

// "t2", "star", "caterpillar:<m>", or a Newick string.
PhyloTree resolve_seed_tree(const std::string& spec);

struct CampaignConfig {
  ProcessKind kind;
  std::string seed_tree = "t2";
  std::uint32_t n = 0;
  std::uint64_t replicates = 0;
  std::uint64_t base_seed = 1;
  bool collect_edge_vector = true;
  bool collect_ab = true;
  bool run_normality = false;  // stores standardized samples for KS
  int threads = 0;             // 0 = hardware; URNPHYLO_THREADS caps either way

  void validate() const;  // throws ConfigError
};

// Statistics of the standardized vectors z = (X_n - n*s*v1)/sqrt(n).
struct CampaignResult {
  CampaignConfig config;
  std::uint64_t replicates = 0;

  std::vector<double> edge_mean, edge_se;
  std::vector<std::vector<double>> edge_cov;
  std::vector<double> ab_mean, ab_se;
  std::vector<std::vector<double>> ab_cov;

  bool has_normality = false;
  NormalityReport ab_normality;
  NormalityReport edge_normality;

  std::string rng_algorithm;

  std::string to_json() const;
};

// Runs N replicates on independent RNG streams; deterministic given the base
// seed regardless of thread count (fixed 1024-replicate merge chunks).
CampaignResult run_campaign(const CampaignConfig& config);

struct IndependenceReport {
  std::vector<CampaignResult> per_seed;
  double max_mean_gap = 0.0;       // pairwise ||mean_i - mean_j||_inf
  double mean_gap_tolerance = 0.0; // 3 * max pairwise combined SE
  double max_cov_rel_frobenius = 0.0;  // pairwise, vs mean norm
  double cov_tolerance = 0.0;
  bool pass = false;

  std::string to_json() const;
};

// The limit law does not depend on the seed tree: campaigns from each seed
// must agree on the standardized (A,B) law.
IndependenceReport initial_tree_independence(ProcessKind kind,
                                             const std::vector<std::string>& seeds,
                                             std::uint32_t n, std::uint64_t replicates,
                                             std::uint64_t base_seed,
                                             double cov_tolerance = 0.10);

// Grows rooted YHK from the 2-leaf tree to 6 leaves, unroots, and counts how
// often the pendant vector is (4,0,2,0). Limit is 4/5.
struct UnrootedSplitEstimate {
  std::uint64_t replicates = 0;
  std::uint64_t alpha1_count = 0;
  double frequency = 0.0;
  double std_error = 0.0;
};
UnrootedSplitEstimate unrooted_split_frequency(std::uint64_t replicates,
                                               std::uint64_t base_seed);

}  // namespace urnphylo

#endif
