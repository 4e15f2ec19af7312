#ifndef URNPHYLO_STATS_HPP
#define URNPHYLO_STATS_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace urnphylo {

// Streaming multivariate mean/covariance (Welford); mergeable so that
// replicate chunks can be folded in a fixed order regardless of how many
// threads produced them.
class RunningMoments {
 public:
  explicit RunningMoments(std::size_t dim);

  void push(const std::vector<double>& x);
  void merge(const RunningMoments& other);

  std::size_t dim() const { return mean_.size(); }
  std::size_t count() const { return n_; }
  std::vector<double> mean() const { return mean_; }
  std::vector<std::vector<double>> covariance() const;  // sample, n-1 divisor
  std::vector<double> std_errors() const;               // sqrt(var_ii / n)

 private:
  std::size_t n_ = 0;
  std::vector<double> mean_;
  std::vector<std::vector<double>> m2_;  // co-moment matrix
};

double normal_cdf(double x, double mu = 0.0, double sigma = 1.0);
double chi_squared_cdf(double x, double dof);

// Kolmogorov-Smirnov sup distance between the empirical CDF of the samples
// and the given continuous CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

struct NormalityReport {
  std::size_t n = 0;
  int rank = 0;                      // numeric rank of the predicted covariance
  double threshold = 0.0;            // 1.63 / sqrt(n), alpha ~ 0.01
  std::vector<double> marginal_ks;   // per coordinate; 0 for degenerate ones
  double mahalanobis_ks = 0.0;       // whitened radius^2 vs chi^2(rank)

  bool pass() const;
};

// Tests whether centered deviations are compatible with N(0, sigma).
// Singular sigma is handled by projecting onto its numeric range
// (eigenvalues above rank_tol * max).
NormalityReport normality_test(const std::vector<std::vector<double>>& deviations,
                               const std::vector<std::vector<double>>& sigma,
                               double rank_tol = 1e-10);

}  // namespace urnphylo

#endif
