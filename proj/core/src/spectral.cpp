#include "urnphylo/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

namespace urnphylo {

namespace {

void fill_numeric_mirror(SpectralData& sd) {
  sd.eigenvalues.resize(sd.eigenvalues_q.size());
  for (std::size_t i = 0; i < sd.eigenvalues_q.size(); ++i)
    sd.eigenvalues[i] = to_double(sd.eigenvalues_q[i]);
  sd.u = sd.u_q.to_doubles();
  sd.uinv = sd.uinv_q.to_doubles();
}

RationalMatrix lambda_diag(const std::vector<Rational>& eig) {
  RationalMatrix l(eig.size(), eig.size());
  for (std::size_t i = 0; i < eig.size(); ++i) l(i, i) = eig[i];
  return l;
}

RationalMatrix replacement_to_rational(const ReplacementMatrix& r) {
  RationalMatrix m(static_cast<std::size_t>(r.d), static_cast<std::size_t>(r.d));
  for (int i = 0; i < r.d; ++i)
    for (int j = 0; j < r.d; ++j) m(i, j) = r.rows[i][j];
  return m;
}

}  // namespace

std::vector<Rational> SpectralData::v1_q() const {
  std::vector<Rational> v(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) v[j] = uinv_q(0, j);
  return v;
}

std::vector<double> SpectralData::v1() const { return uinv.at(0); }

SpectralData builtin_spectral(Model model) {
  SpectralData sd;
  sd.exact = true;
  if (model == Model::YHK) {
    sd.d = 4;
    sd.eigenvalues_q = {1, 0, -2, -3};
    sd.u_q = RationalMatrix{{1, 1, -1, -1},
                            {1, 0, -1, -3},
                            {1, -2, 2, 5},
                            {1, 0, 2, 3}};
  } else {
    sd.d = 6;
    sd.eigenvalues_q = {2, 0, 0, 0, -2, -4};
    sd.u_q = RationalMatrix{{1, Rational(5, 2), 2, 1, 1, 1},
                            {1, -2, 1, 0, 1, 5},
                            {1, -8, -1, 1, -3, -9},
                            {1, -1, 1, 1, -3, -5},
                            {1, 3, -1, 1, 1, 5},
                            {1, 1, -1, -1, 1, 1}};
  }
  sd.uinv_q = sd.u_q.inverse();
  fill_numeric_mirror(sd);
  // Exact data has zero residual by construction; assert it anyway.
  RationalMatrix check =
      sd.uinv_q * replacement_to_rational(ReplacementMatrix::from_model(model)) * sd.u_q;
  if (check != lambda_diag(sd.eigenvalues_q))
    throw Error("built-in spectral data fails U^-1 R U = Lambda");
  return sd;
}

SpectralData diagonalize(const ReplacementMatrix& r) {
  const int d = r.d;
  if (d < 1 || d > 16) throw Error("diagonalize supports 1 <= d <= 16");
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = r.rows[i][j];

  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.eigenvalues().imag().cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw Error("matrix is not diagonalizable over the reals: complex eigenvalues");

  // Realify: a (numerically) conjugate eigenpair spans a real invariant
  // plane through the real and imaginary parts of one of its vectors.
  Eigen::MatrixXd vecs(d, d);
  Eigen::VectorXd evals(d);
  {
    const auto& ev = solver.eigenvalues();
    const Eigen::MatrixXcd& V = solver.eigenvectors();
    std::vector<bool> filled(static_cast<std::size_t>(d), false);
    for (int j = 0; j < d; ++j) {
      if (filled[j]) continue;
      evals(j) = ev(j).real();
      if (ev(j).imag() != 0.0 && j + 1 < d) {
        evals(j + 1) = ev(j + 1).real();
        vecs.col(j) = V.col(j).real();
        vecs.col(j + 1) = V.col(j).imag();
        filled[j + 1] = true;
      } else {
        vecs.col(j) = V.col(j).real();
      }
      filled[j] = true;
    }
    for (int j = 0; j < d; ++j) {
      double nrm = vecs.col(j).norm();
      if (nrm > 0) vecs.col(j) /= nrm;
    }
  }

  std::vector<int> order(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return evals(a) > evals(b); });

  Eigen::MatrixXd u(d, d);
  Eigen::VectorXd eig(d);
  for (int i = 0; i < d; ++i) {
    eig(i) = evals(order[i]);
    u.col(i) = vecs.col(order[i]);
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(u);
  lu.setThreshold(1e-8);
  if (lu.rank() < d) throw Error("matrix is defective: eigenvector basis is rank-deficient");

  // Normalize the principal column to (1,...,1)^T when the matrix is
  // balanced; otherwise just scale to unit max entry.
  Eigen::VectorXd p = u.col(0);
  bool constant = (p.array() - p(0)).abs().maxCoeff() < 1e-9 * std::abs(p(0));
  if (constant && std::abs(p(0)) > 0) u.col(0) /= p(0);

  Eigen::MatrixXd uinv = u.inverse();
  // Scale remaining eigenvectors so that each vi has unit leading magnitude;
  // any biorthogonal choice is acceptable downstream.
  for (int j = 1; j < d; ++j) {
    int imax = 0;
    uinv.row(j).cwiseAbs().maxCoeff(&imax);
    double c = uinv(j, imax);
    uinv.row(j) /= c;
    u.col(j) *= c;
  }

  Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) lambda(i, i) = eig(i);
  double residual = (uinv * m * u - lambda).cwiseAbs().maxCoeff();
  if (residual > 1e-8 * scale) throw Error("eigendecomposition residual too large");

  SpectralData sd;
  sd.d = d;
  sd.exact = false;
  sd.residual = residual;
  sd.eigenvalues.assign(eig.data(), eig.data() + d);
  sd.u.assign(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d)));
  sd.uinv = sd.u;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      sd.u[i][j] = u(i, j);
      sd.uinv[i][j] = uinv(i, j);
    }
  return sd;
}

std::pair<double, std::vector<double>> limit_vector(const SpectralData& sd) {
  return {sd.s(), sd.v1()};
}

std::pair<Rational, std::vector<Rational>> limit_vector_exact(const SpectralData& sd) {
  if (!sd.exact) throw Error("exact limit vector requires exact eigendata");
  return {sd.s_q(), sd.v1_q()};
}

SigmaMatrix sigma(const SpectralData& sd) {
  SigmaMatrix out;
  const int d = sd.d;
  if (sd.exact) {
    RationalMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    const Rational s = sd.s_q();
    for (int i = 1; i < d; ++i) {
      for (int j = 1; j < d; ++j) {
        const Rational li = sd.eigenvalues_q[i], lj = sd.eigenvalues_q[j];
        Rational quad = 0;  // ui^T diag(v1) uj
        for (int k = 0; k < d; ++k) quad += sd.u_q(k, i) * sd.uinv_q(0, k) * sd.u_q(k, j);
        Rational coeff = s * li * lj * quad / (s - li - lj);
        if (coeff == 0) continue;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) m(a, b) += coeff * sd.uinv_q(i, a) * sd.uinv_q(j, b);
      }
    }
    out.exact = m;
    out.value = m.to_doubles();
    return out;
  }
  std::vector<std::vector<double>> m(static_cast<std::size_t>(d),
                                     std::vector<double>(static_cast<std::size_t>(d), 0.0));
  const double s = sd.s();
  const auto v1 = sd.v1();
  for (int i = 1; i < d; ++i)
    for (int j = 1; j < d; ++j) {
      const double li = sd.eigenvalues[i], lj = sd.eigenvalues[j];
      double quad = 0;
      for (int k = 0; k < d; ++k) quad += sd.u[k][i] * v1[k] * sd.u[k][j];
      double denom = s - li - lj;
      if (denom == 0) throw Error("sigma denominator vanished; (A2) violated");
      double coeff = s * li * lj * quad / denom;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) m[a][b] += coeff * sd.uinv[i][a] * sd.uinv[j][b];
    }
  out.value = std::move(m);
  return out;
}

SigmaMatrix project_ab(const SigmaMatrix& edge_sigma) {
  const std::size_t d = edge_sigma.dim();
  if (d < 2) throw Error("project_ab needs at least a 2-dimensional edge covariance");
  SigmaMatrix out;
  if (edge_sigma.exact) {
    const RationalMatrix& m = *edge_sigma.exact;
    RationalMatrix l(2, d);
    l(0, 0) = Rational(1, 2);
    l(1, 0) = Rational(1, 2);
    l(1, 1) = Rational(1, 2);
    out.exact = l * m * l.transposed();
    out.value = out.exact->to_doubles();
    return out;
  }
  const auto& m = edge_sigma.value;
  std::vector<std::vector<double>> r(2, std::vector<double>(2, 0.0));
  // (A,B) = (x1/2, (x1+x2)/2)
  r[0][0] = m[0][0] / 4;
  r[0][1] = (m[0][0] + m[0][1]) / 4;
  r[1][0] = (m[0][0] + m[1][0]) / 4;
  r[1][1] = (m[0][0] + m[0][1] + m[1][0] + m[1][1]) / 4;
  out.value = std::move(r);
  return out;
}

std::string spectral_report_json(const SpectralData& sd) {
  nlohmann::json j;
  j["d"] = sd.d;
  j["exact"] = sd.exact;
  j["eigenvalues"] = sd.eigenvalues;
  j["residual"] = sd.residual;
  j["v1"] = sd.v1();
  SigmaMatrix sig = sigma(sd);
  j["sigma"] = sig.value;
  if (sd.exact) {
    std::vector<std::string> eq;
    for (const auto& e : sd.eigenvalues_q) eq.push_back(rational_to_string(e));
    j["eigenvalues_exact"] = eq;
    std::vector<std::string> v1q;
    for (const auto& q : sd.v1_q()) v1q.push_back(rational_to_string(q));
    j["v1_exact"] = v1q;
    std::vector<std::vector<std::string>> sq(static_cast<std::size_t>(sd.d),
                                             std::vector<std::string>(static_cast<std::size_t>(sd.d)));
    for (int a = 0; a < sd.d; ++a)
      for (int b = 0; b < sd.d; ++b) sq[a][b] = rational_to_string((*sig.exact)(a, b));
    j["sigma_exact"] = sq;
  }
  return j.dump(2);
}

}  // namespace urnphylo
