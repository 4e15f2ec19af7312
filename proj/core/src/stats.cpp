#include "urnphylo/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>

#include "urnphylo/errors.hpp"

namespace urnphylo {

RunningMoments::RunningMoments(std::size_t dim)
    : mean_(dim, 0.0), m2_(dim, std::vector<double>(dim, 0.0)) {}

void RunningMoments::push(const std::vector<double>& x) {
  if (x.size() != mean_.size()) throw std::invalid_argument("dimension mismatch");
  ++n_;
  const std::size_t d = mean_.size();
  std::vector<double> delta(d);
  for (std::size_t i = 0; i < d; ++i) {
    delta[i] = x[i] - mean_[i];
    mean_[i] += delta[i] / static_cast<double>(n_);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m2_[i][j] += delta[i] * (x[j] - mean_[j]);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const std::size_t d = dim();
  const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
  const double nt = na + nb;
  std::vector<double> delta(d);
  for (std::size_t i = 0; i < d; ++i) delta[i] = other.mean_[i] - mean_[i];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m2_[i][j] += other.m2_[i][j] + delta[i] * delta[j] * na * nb / nt;
  for (std::size_t i = 0; i < d; ++i) mean_[i] += delta[i] * nb / nt;
  n_ += other.n_;
}

std::vector<std::vector<double>> RunningMoments::covariance() const {
  if (n_ < 2) throw Error("covariance requires at least two samples");
  auto cov = m2_;
  const double denom = static_cast<double>(n_ - 1);
  for (auto& row : cov)
    for (auto& v : row) v /= denom;
  return cov;
}

std::vector<double> RunningMoments::std_errors() const {
  auto cov = covariance();
  std::vector<double> se(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    se[i] = std::sqrt(std::max(0.0, cov[i][i]) / static_cast<double>(n_));
  return se;
}

double normal_cdf(double x, double mu, double sigma) {
  boost::math::normal_distribution<double> dist(mu, sigma);
  return boost::math::cdf(dist, x);
}

double chi_squared_cdf(double x, double dof) {
  if (x <= 0) return 0.0;
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(dist, x);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_distance requires samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

bool NormalityReport::pass() const {
  double worst = mahalanobis_ks;
  for (double k : marginal_ks) worst = std::max(worst, k);
  return worst < threshold;
}

NormalityReport normality_test(const std::vector<std::vector<double>>& deviations,
                               const std::vector<std::vector<double>>& sigma,
                               double rank_tol) {
  if (deviations.empty()) throw std::invalid_argument("normality_test requires samples");
  const std::size_t d = sigma.size();

  Eigen::MatrixXd s(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s(i, j) = 0.5 * (sigma[i][j] + sigma[j][i]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  const double cut = rank_tol * std::max(lmax, 1.0);

  std::vector<int> kept;
  for (int i = 0; i < static_cast<int>(d); ++i)
    if (es.eigenvalues()(i) > cut) kept.push_back(i);

  NormalityReport rep;
  rep.n = deviations.size();
  rep.rank = static_cast<int>(kept.size());
  rep.threshold = 1.63 / std::sqrt(static_cast<double>(rep.n));
  rep.marginal_ks.assign(d, 0.0);

  std::vector<std::vector<double>> coords(d);
  std::vector<double> radii;
  radii.reserve(rep.n);
  for (const auto& x : deviations) {
    if (x.size() != d) throw std::invalid_argument("dimension mismatch");
    double r2 = 0.0;
    for (int idx : kept) {
      double proj = 0.0;
      for (std::size_t a = 0; a < d; ++a) proj += es.eigenvectors()(a, idx) * x[a];
      r2 += proj * proj / es.eigenvalues()(idx);
    }
    radii.push_back(r2);
    for (std::size_t i = 0; i < d; ++i) coords[i].push_back(x[i]);
  }

  for (std::size_t i = 0; i < d; ++i) {
    const double sd = std::sqrt(std::max(0.0, s(i, i)));
    if (sd <= std::sqrt(cut)) continue;  // degenerate marginal
    rep.marginal_ks[i] =
        ks_distance(coords[i], [sd](double x) { return normal_cdf(x, 0.0, sd); });
  }
  if (rep.rank > 0) {
    const double dof = rep.rank;
    rep.mahalanobis_ks =
        ks_distance(radii, [dof](double x) { return chi_squared_cdf(x, dof); });
  }
  return rep;
}

}  // namespace urnphylo
