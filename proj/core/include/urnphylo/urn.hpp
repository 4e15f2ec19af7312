#ifndef URNPHYLO_URN_HPP
#define URNPHYLO_URN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "urnphylo/rng.hpp"
#include "urnphylo/tree_models.hpp"

namespace urnphylo {

// Integer replacement matrix of a generalized Polya urn: drawing colour i
// adds row i to the counts (negative entries remove balls).
struct ReplacementMatrix {
  int d = 0;
  std::vector<std::vector<int>> rows;

  static ReplacementMatrix yhk();       // 4x4 pendant-type dynamics
  static ReplacementMatrix pda();       // 6x6 full edge-type dynamics
  static ReplacementMatrix identity(int d);
  static ReplacementMatrix from_model(Model m) {
    return m == Model::YHK ? yhk() : pda();
  }

  // Common row sum when strictly balanced.
  bool row_sums_equal(long long* sum_out) const;
};

struct UrnState {
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
  static UrnState from_edge_types(const EdgeTypeVector& v);
};

struct AssumptionReport {
  bool small = false;             // (A2): real spectrum, s > 0, s > 2*lambda
  bool strictly_balanced = false; // (A3): equal positive row sums, stochastic v1
  bool diagonalizable = false;    // (A4): full set of real eigenvectors
  bool witnessed_tenable = false; // (A1): no violation over randomized trials
  std::vector<double> eigenvalues;  // descending
  std::vector<std::string> notes;

  bool all_pass() const {
    return small && strictly_balanced && diagonalizable && witnessed_tenable;
  }
};

// Draws a colour proportional to current counts and applies its row.
// Throws TenabilityViolationError if any count would go negative.
int urn_step(UrnState& state, const ReplacementMatrix& r, RngStream& rng);

// Full trajectory of length steps+1 (initial state included).
std::vector<UrnState> run(const UrnState& initial, const ReplacementMatrix& r,
                          std::size_t steps, RngStream& rng);

// (A1) is only witnessed empirically: `tenability_trials` random
// trajectories of `tenability_steps` steps from `tenability_start` (empty =
// a scaled-up uniform start; note tenability depends on the start state, so
// pass a reachable one, e.g. the counts of the 2-leaf tree).
AssumptionReport check_assumptions(const ReplacementMatrix& r,
                                   const std::vector<std::int64_t>& tenability_start = {},
                                   int tenability_trials = 32, int tenability_steps = 512,
                                   std::uint64_t seed = 1);

// b_{n,k} = prod_{l=k}^{n-1} (1 + lambda / (t0 + l*s)); b_{n,n} = 1.
double b_coeff(std::int64_t n, std::int64_t k, double lambda, double s, double t0);

// (1/n) * sum_{k=1}^{n} b_{n,k}(i) b_{n,k}(j); tends to s/(s-li-lj).
double b_second_moment_sum(std::int64_t n, double lambda_i, double lambda_j, double s,
                           double t0);

// F_m^n(l, lambda) = prod_{i=m}^{n-1} (1 + lambda/(l+i)).
double f_ratio(std::int64_t m, std::int64_t n, double ell, double lambda);

// CSV dump: step,C1..Cd,total,drawn (drawn = -1 for the initial row).
std::string trajectory_to_csv(const std::vector<UrnState>& traj,
                              const std::vector<int>& drawn_colors);

}  // namespace urnphylo

#endif
