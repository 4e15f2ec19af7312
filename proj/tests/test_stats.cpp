#include <doctest.h>

#include <cmath>

#include "urnphylo/rng.hpp"
#include "urnphylo/stats.hpp"

using namespace urnphylo;

namespace {

// standard normal pair via Box-Muller
std::pair<double, double> gauss_pair(RngStream& rng) {
  double u1 = rng.next_double(), u2 = rng.next_double();
  while (u1 <= 0) u1 = rng.next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2)};
}

}  // namespace

TEST_CASE("welford matches direct formulas") {
  RunningMoments rm(2);
  std::vector<std::vector<double>> xs{{1, 2}, {3, 1}, {-1, 0}, {2, 5}};
  for (const auto& x : xs) rm.push(x);
  CHECK(rm.count() == 4);
  CHECK(rm.mean()[0] == doctest::Approx(1.25));
  CHECK(rm.mean()[1] == doctest::Approx(2.0));
  // sample covariance, n-1 divisor
  CHECK(rm.covariance()[0][0] == doctest::Approx(35.0 / 12));
  CHECK(rm.covariance()[0][1] == rm.covariance()[1][0]);
}

TEST_CASE("merge equals single-stream accumulation") {
  RngStream rng = RngStream::for_replicate(9, 0);
  RunningMoments whole(3), a(3), b(3), c(3);
  for (int i = 0; i < 3000; ++i) {
    std::vector<double> x{rng.next_double(), rng.next_double(), rng.next_double()};
    whole.push(x);
    (i < 700 ? a : i < 1800 ? b : c).push(x);
  }
  RunningMoments merged(3);
  merged.merge(a);
  merged.merge(b);
  merged.merge(c);
  CHECK(merged.count() == whole.count());
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(merged.mean()[i] - whole.mean()[i]) < 1e-12);
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(merged.covariance()[i][j] - whole.covariance()[i][j]) < 1e-12);
  }
}

TEST_CASE("cdf helpers") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.96) == doctest::Approx(0.975).epsilon(1e-3));
  CHECK(chi_squared_cdf(0.0, 3) == 0.0);
  CHECK(chi_squared_cdf(7.8147, 3) == doctest::Approx(0.95).epsilon(1e-3));
}

TEST_CASE("ks distance on a uniform grid") {
  // empirical CDF of {0.1,...,0.9} vs U(0,1): sup distance is 1/10
  std::vector<double> xs;
  for (int i = 1; i <= 9; ++i) xs.push_back(i / 10.0);
  double d = ks_distance(xs, [](double x) { return x; });
  CHECK(d == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("normality test accepts synthetic normal data") {
  // Sigma = [[1, 0.5], [0.5, 2]] via its Cholesky factor
  const double l21 = 0.5, l22 = std::sqrt(2.0 - 0.25);
  RngStream rng = RngStream::for_replicate(4, 0);
  std::vector<std::vector<double>> xs;
  for (int i = 0; i < 20000; ++i) {
    auto [g1, g2] = gauss_pair(rng);
    xs.push_back({g1, l21 * g1 + l22 * g2});
  }
  NormalityReport rep = normality_test(xs, {{1, 0.5}, {0.5, 2}});
  CHECK(rep.rank == 2);
  CHECK(rep.pass());
}

TEST_CASE("normality test rejects constant data") {
  std::vector<std::vector<double>> xs(500, std::vector<double>{1.0, 1.0});
  NormalityReport rep = normality_test(xs, {{1, 0}, {0, 1}});
  CHECK_FALSE(rep.pass());
}

TEST_CASE("singular sigma is range-projected") {
  // rank-1 covariance: both coordinates equal
  RngStream rng = RngStream::for_replicate(6, 0);
  std::vector<std::vector<double>> xs;
  for (int i = 0; i < 10000; ++i) {
    auto [g, _] = gauss_pair(rng);
    xs.push_back({g, g});
  }
  NormalityReport rep = normality_test(xs, {{1, 1}, {1, 1}});
  CHECK(rep.rank == 1);
  CHECK(rep.pass());
}
