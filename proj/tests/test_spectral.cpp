#include <doctest.h>

#include <cmath>

#include "urnphylo/spectral.hpp"

using namespace urnphylo;

TEST_CASE("builtin eigendata is exact and normalized") {
  for (Model m : {Model::YHK, Model::PDA}) {
    SpectralData sd = builtin_spectral(m);
    CHECK(sd.exact);
    // u1 = ones
    for (int i = 0; i < sd.d; ++i) CHECK(sd.u_q(i, 0) == 1);
    // v1 stochastic
    Rational sum = 0;
    for (const Rational& v : sd.v1_q()) sum += v;
    CHECK(sum == 1);
  }
  CHECK(builtin_spectral(Model::YHK).s_q() == 1);
  CHECK(builtin_spectral(Model::PDA).s_q() == 2);
}

TEST_CASE("limit vectors") {
  auto [s, v1] = limit_vector(builtin_spectral(Model::PDA));
  CHECK(s == doctest::Approx(2.0));
  CHECK(v1[3] == doctest::Approx(3.0 / 16));
  auto [sq, v1q] = limit_vector_exact(builtin_spectral(Model::YHK));
  CHECK(v1q == std::vector<Rational>{Rational(2, 6), Rational(2, 6), Rational(1, 6),
                                     Rational(1, 6)});
}

TEST_CASE("numeric diagonalize recovers the exact spectrum") {
  SpectralData yn = diagonalize(ReplacementMatrix::yhk());
  const double ye[] = {1, 0, -2, -3};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(yn.eigenvalues[i] - ye[i]) < 1e-8);
  SpectralData pn = diagonalize(ReplacementMatrix::pda());
  const double pe[] = {2, 0, 0, 0, -2, -4};
  for (int i = 0; i < 6; ++i) CHECK(std::abs(pn.eigenvalues[i] - pe[i]) < 1e-8);
  CHECK(yn.residual < 1e-8);
}

TEST_CASE("numeric sigma matches the exact sigma") {
  for (Model m : {Model::YHK, Model::PDA}) {
    SigmaMatrix exact = sigma(builtin_spectral(m));
    SigmaMatrix numeric = sigma(diagonalize(ReplacementMatrix::from_model(m)));
    REQUIRE(numeric.dim() == exact.dim());
    for (std::size_t i = 0; i < exact.dim(); ++i)
      for (std::size_t j = 0; j < exact.dim(); ++j)
        CHECK(numeric.value[i][j] == doctest::Approx(exact.value[i][j]).epsilon(1e-6));
  }
}

TEST_CASE("defective matrix is rejected") {
  ReplacementMatrix jordan{2, {{1, 1}, {0, 1}}};
  CHECK_THROWS_AS(diagonalize(jordan), Error);
}

TEST_CASE("project_ab on exact data") {
  SigmaMatrix ab = project_ab(sigma(builtin_spectral(Model::PDA)));
  REQUIRE(ab.exact.has_value());
  CHECK((*ab.exact)(0, 0) == Rational(3, 64));
  CHECK((*ab.exact)(0, 1) == 0);
  CHECK((*ab.exact)(1, 1) == Rational(4, 64));
}

TEST_CASE("json report includes exact fields") {
  std::string j = spectral_report_json(builtin_spectral(Model::YHK));
  CHECK(j.find("\"eigenvalues_exact\"") != std::string::npos);
  CHECK(j.find("\"sigma_exact\"") != std::string::npos);
  CHECK(j.find("1/6") != std::string::npos);
}
