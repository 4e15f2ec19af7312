#include "urnphylo/urn.hpp"

#include "urnphylo/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace urnphylo {

ReplacementMatrix ReplacementMatrix::yhk() {
  return {4,
          {{0, 0, 0, 1}, {2, -2, 1, 0}, {-2, 4, -1, 0}, {0, 2, 0, -1}}};
}

ReplacementMatrix ReplacementMatrix::pda() {
  return {6,
          {{0, 0, 0, 1, 0, 1},
           {2, -2, 1, 0, -1, 2},
           {-2, 4, -1, 0, 2, -1},
           {0, 2, 0, -1, 1, 0},
           {2, -2, 1, 0, -1, 2},
           {0, 0, 0, 1, 0, 1}}};
}

ReplacementMatrix ReplacementMatrix::identity(int d) {
  ReplacementMatrix r{d, std::vector<std::vector<int>>(d, std::vector<int>(d, 0))};
  for (int i = 0; i < d; ++i) r.rows[i][i] = 1;
  return r;
}

bool ReplacementMatrix::row_sums_equal(long long* sum_out) const {
  long long s0 = 0;
  for (int i = 0; i < d; ++i) {
    long long s = std::accumulate(rows[i].begin(), rows[i].end(), 0LL);
    if (i == 0)
      s0 = s;
    else if (s != s0)
      return false;
  }
  if (sum_out) *sum_out = s0;
  return true;
}

std::int64_t UrnState::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

UrnState UrnState::from_edge_types(const EdgeTypeVector& v) {
  return UrnState{std::vector<std::int64_t>(v.counts.begin(), v.counts.end())};
}

int urn_step(UrnState& state, const ReplacementMatrix& r, RngStream& rng) {
  const std::int64_t t = state.total();
  if (t <= 0) throw TenabilityViolationError("urn is empty");
  if (static_cast<int>(state.counts.size()) != r.d)
    throw std::invalid_argument("state dimension does not match replacement matrix");

  std::int64_t u = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(t)));
  int color = 0;
  for (; color < r.d; ++color) {
    if (u < state.counts[color]) break;
    u -= state.counts[color];
  }

  for (int j = 0; j < r.d; ++j) {
    state.counts[j] += r.rows[color][j];
    if (state.counts[j] < 0) {
      std::ostringstream msg;
      msg << "tenability violated: colour " << color + 1 << " drove count " << j + 1
          << " to " << state.counts[j];
      throw TenabilityViolationError(msg.str());
    }
  }
  return color;
}

std::vector<UrnState> run(const UrnState& initial, const ReplacementMatrix& r,
                          std::size_t steps, RngStream& rng) {
  std::vector<UrnState> traj;
  traj.reserve(steps + 1);
  traj.push_back(initial);
  UrnState cur = initial;
  for (std::size_t i = 0; i < steps; ++i) {
    try {
      urn_step(cur, r, rng);
    } catch (const TenabilityViolationError& e) {
      throw TenabilityViolationError(std::string(e.what()) + " at step " + std::to_string(i + 1));
    }
    traj.push_back(cur);
  }
  return traj;
}

AssumptionReport check_assumptions(const ReplacementMatrix& r,
                                   const std::vector<std::int64_t>& tenability_start,
                                   int tenability_trials, int tenability_steps,
                                   std::uint64_t seed) {
  AssumptionReport rep;
  const int d = r.d;
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = r.rows[i][j];

  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  bool real_spectrum = solver.eigenvalues().imag().cwiseAbs().maxCoeff() <= tol;
  std::vector<double> eig(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) eig[i] = solver.eigenvalues()(i).real();
  std::sort(eig.begin(), eig.end(), std::greater<>());
  rep.eigenvalues = eig;

  if (!real_spectrum) {
    rep.notes.push_back("(A2) fails: complex eigenvalues");
  } else {
    const double s = eig.front();
    bool small = s > 0;
    for (std::size_t i = 1; i < eig.size(); ++i) small = small && s > 2 * eig[i] - tol;
    rep.small = small;
    if (!small) rep.notes.push_back("(A2) fails: principal eigenvalue not dominant enough");
  }

  long long row_sum = 0;
  if (!r.row_sums_equal(&row_sum)) {
    rep.notes.push_back("(A3) fails: unequal row sums");
  } else if (row_sum <= 0) {
    rep.notes.push_back("(A3) fails: non-positive balance");
  } else {
    // Stochastic left eigenvector for s: left eigenvectors of R are right
    // eigenvectors of R^T.
    Eigen::EigenSolver<Eigen::MatrixXd> tsolver(m.transpose());
    bool found = false;
    for (int i = 0; i < d && !found; ++i) {
      if (std::abs(tsolver.eigenvalues()(i).real() - static_cast<double>(row_sum)) > 1e-6 * scale ||
          std::abs(tsolver.eigenvalues()(i).imag()) > tol)
        continue;
      Eigen::VectorXd v = tsolver.eigenvectors().col(i).real();
      double sum = v.sum();
      if (std::abs(sum) < 1e-12) continue;
      v /= sum;
      if (v.minCoeff() >= -1e-9) found = true;
    }
    rep.strictly_balanced = found;
    if (!found) rep.notes.push_back("(A3) fails: no stochastic principal left eigenvector");
  }

  if (real_spectrum) {
    try {
      diagonalize(r);
      rep.diagonalizable = true;
    } catch (const Error& e) {
      rep.notes.push_back(std::string("(A4) fails: ") + e.what());
    }
  } else {
    rep.notes.push_back("(A4) fails: not diagonalizable over the reals");
  }

  // (A1) is semi-decidable; witness it over randomized trajectories.
  bool violated = false;
  std::vector<std::int64_t> start = tenability_start;
  if (start.empty())
    start.assign(static_cast<std::size_t>(d), static_cast<std::int64_t>(scale) * 2);
  if (static_cast<int>(start.size()) != d)
    throw std::invalid_argument("tenability start dimension mismatch");
  for (int trial = 0; trial < tenability_trials && !violated; ++trial) {
    UrnState st{start};
    RngStream rng = RngStream::for_replicate(seed, static_cast<std::uint64_t>(trial));
    try {
      for (int k = 0; k < tenability_steps; ++k) urn_step(st, r, rng);
    } catch (const TenabilityViolationError&) {
      violated = true;
    }
  }
  rep.witnessed_tenable = !violated;
  if (violated) rep.notes.push_back("(A1) fails: tenability violation witnessed");
  return rep;
}

double b_coeff(std::int64_t n, std::int64_t k, double lambda, double s, double t0) {
  if (k < 0 || k > n) throw std::invalid_argument("b_coeff requires 0 <= k <= n");
  double prod = 1.0;
  for (std::int64_t l = k; l < n; ++l) {
    double t = t0 + static_cast<double>(l) * s;
    if (t == 0.0) throw Error("b-coefficient product undefined: t_l = 0");
    prod *= 1.0 + lambda / t;
  }
  return prod;
}

double b_second_moment_sum(std::int64_t n, double lambda_i, double lambda_j, double s,
                           double t0) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  // Suffix products b_{n,k} for k = n..1, accumulated on the fly.
  double bi = 1.0, bj = 1.0, sum = bi * bj;  // k = n term
  for (std::int64_t k = n - 1; k >= 1; --k) {
    double t = t0 + static_cast<double>(k) * s;
    if (t == 0.0) throw Error("b-coefficient product undefined: t_k = 0");
    bi *= 1.0 + lambda_i / t;
    bj *= 1.0 + lambda_j / t;
    sum += bi * bj;
  }
  return sum / static_cast<double>(n);
}

double f_ratio(std::int64_t m, std::int64_t n, double ell, double lambda) {
  if (n < m || m < 0) throw std::invalid_argument("f_ratio requires 0 <= m <= n");
  if (ell <= 0) throw std::invalid_argument("f_ratio requires ell > 0");
  double prod = 1.0;
  for (std::int64_t i = m; i < n; ++i) {
    double denom = ell + static_cast<double>(i);
    if (denom == 0.0) throw Error("f_ratio factor undefined: zero denominator");
    prod *= 1.0 + lambda / denom;
  }
  return prod;
}

std::string trajectory_to_csv(const std::vector<UrnState>& traj,
                              const std::vector<int>& drawn_colors) {
  std::ostringstream out;
  if (traj.empty()) return "";
  const std::size_t d = traj.front().counts.size();
  out << "step";
  for (std::size_t j = 0; j < d; ++j) out << ",c" << j + 1;
  out << ",total,drawn\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << i;
    for (std::size_t j = 0; j < d; ++j) out << ',' << traj[i].counts[j];
    out << ',' << traj[i].total() << ','
        << (i == 0 ? -1 : drawn_colors.at(i - 1) + 1) << '\n';
  }
  return out.str();
}

}  // namespace urnphylo
