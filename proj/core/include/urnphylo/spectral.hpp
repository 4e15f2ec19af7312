#ifndef URNPHYLO_SPECTRAL_HPP
#define URNPHYLO_SPECTRAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "urnphylo/rational.hpp"
#include "urnphylo/urn.hpp"

namespace urnphylo {

// Eigendata of a replacement matrix, normalized so that u1 = (1,...,1)^T and
// v1 (the first row of U^-1) is stochastic. Right eigenvectors are the
// columns of U; left eigenvectors the rows of U^-1.
struct SpectralData {
  int d = 0;
  bool exact = false;

  // Exact path (built-in YHK/PDA urns).
  std::vector<Rational> eigenvalues_q;  // descending
  RationalMatrix u_q, uinv_q;

  // Numeric mirror (always populated).
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> u, uinv;
  double residual = 0.0;  // ||U^-1 R U - Lambda||_max

  Rational s_q() const { return eigenvalues_q.at(0); }
  double s() const { return eigenvalues.at(0); }
  std::vector<Rational> v1_q() const;  // first row of U^-1
  std::vector<double> v1() const;
};

// Covariance matrix of the CLT limit; exact when derived from exact
// eigendata.
struct SigmaMatrix {
  std::optional<RationalMatrix> exact;
  std::vector<std::vector<double>> value;

  std::size_t dim() const { return value.size(); }
};

// Exact hand-derived decompositions of the two built-in urns.
SpectralData builtin_spectral(Model model);

// Numeric eigendecomposition for user matrices (d <= 16); eigenvalues sorted
// descending, normalization as above. Throws Error on complex or defective
// spectra.
SpectralData diagonalize(const ReplacementMatrix& r);

// Principal eigenvalue and stochastic left eigenvector; the urn count limit
// is C_n/n -> s*v1.
std::pair<double, std::vector<double>> limit_vector(const SpectralData& sd);
std::pair<Rational, std::vector<Rational>> limit_vector_exact(const SpectralData& sd);

// CLT covariance: sum over non-principal pairs of
// s*li*lj * (ui^T diag(v1) uj) / (s - li - lj) * vi^T vj.
SigmaMatrix sigma(const SpectralData& sd);

// Covariance of (pitchforks, cherries) = L Sigma L^T with
// L = [[1/2, 0, ...], [1/2, 1/2, 0, ...]].
SigmaMatrix project_ab(const SigmaMatrix& edge_sigma);

// JSON report: eigenvalues, v1, Sigma, residuals; rationals as "num/den".
std::string spectral_report_json(const SpectralData& sd);

}  // namespace urnphylo

#endif
