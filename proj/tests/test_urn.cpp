#include <doctest.h>

#include <cmath>

#include "urnphylo/urn.hpp"

using namespace urnphylo;

TEST_CASE("replacement matrices are strictly balanced") {
  long long s = 0;
  CHECK(ReplacementMatrix::yhk().row_sums_equal(&s));
  CHECK(s == 1);
  CHECK(ReplacementMatrix::pda().row_sums_equal(&s));
  CHECK(s == 2);
}

TEST_CASE("assumption checks pass for the built-in urns") {
  // tenability is witnessed from the 2-leaf tree's reachable counts
  struct Case {
    ReplacementMatrix r;
    std::vector<std::int64_t> start;
  };
  for (const auto& [r, start] : {Case{ReplacementMatrix::yhk(), {0, 2, 0, 0}},
                                 Case{ReplacementMatrix::pda(), {0, 2, 0, 0, 1, 0}}}) {
    AssumptionReport rep = check_assumptions(r, start);
    CHECK(rep.small);
    CHECK(rep.strictly_balanced);
    CHECK(rep.diagonalizable);
    CHECK(rep.witnessed_tenable);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("identity urn violates (A2)") {
  AssumptionReport rep = check_assumptions(ReplacementMatrix::identity(3));
  CHECK_FALSE(rep.small);  // s = 1 is not > 2*lambda_2 = 2
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("urn step conserves the balance") {
  UrnState st{{0, 2, 0, 0}};
  RngStream rng = RngStream::for_replicate(1, 0);
  ReplacementMatrix r = ReplacementMatrix::yhk();
  for (int k = 0; k < 200; ++k) {
    urn_step(st, r, rng);
    CHECK(st.total() == 2 + k + 1);
  }
}

TEST_CASE("tenability violation is reported") {
  ReplacementMatrix bad{2, {{-2, 3}, {3, -2}}};
  UrnState st{{1, 1}};
  RngStream rng = RngStream::for_replicate(1, 0);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 100; ++i) urn_step(st, bad, rng);
      }(),
      TenabilityViolationError);
}

TEST_CASE("run produces a full trajectory") {
  RngStream rng = RngStream::for_replicate(2, 0);
  auto traj = run(UrnState{{0, 2, 0, 0}}, ReplacementMatrix::yhk(), 50, rng);
  CHECK(traj.size() == 51);
  CHECK(traj.back().total() == 52);
}

TEST_CASE("b coefficients") {
  CHECK(b_coeff(5, 5, -2, 1, 2) == doctest::Approx(1.0));
  // b_{n,k} = prod_{l=k}^{n-1} (1 + lambda/(t0 + l s))
  double expect = (1.0 - 2.0 / 5) * (1.0 - 2.0 / 6);
  CHECK(b_coeff(5, 3, -2, 1, 2) == doctest::Approx(expect));
  CHECK_THROWS_AS(b_coeff(3, 5, -2, 1, 2), std::invalid_argument);
}

TEST_CASE("b second-moment sums approach s/(s-li-lj)") {
  CHECK(std::abs(b_second_moment_sum(100000, -2, -2, 1, 2) - 1.0 / 5) < 1e-2);
  CHECK(std::abs(b_second_moment_sum(100000, -2, -3, 1, 2) - 1.0 / 6) < 1e-2);
  CHECK(std::abs(b_second_moment_sum(100000, -4, -4, 2, 3) - 1.0 / 5) < 1e-2);
}

TEST_CASE("f ratio scaling") {
  // (m/n)^lambda * F_m^n -> 1
  double f = f_ratio(1000, 100000, 2.0, -2.0);
  double scaled = std::pow(1000.0 / 100000.0, -2.0) * f;
  CHECK(std::abs(scaled - 1.0) < 1e-2);
}

TEST_CASE("trajectory csv shape") {
  RngStream rng = RngStream::for_replicate(3, 0);
  std::vector<int> drawn;
  std::vector<UrnState> traj{UrnState{{0, 2, 0, 0}}};
  UrnState cur = traj[0];
  ReplacementMatrix r = ReplacementMatrix::yhk();
  for (int i = 0; i < 3; ++i) {
    drawn.push_back(urn_step(cur, r, rng));
    traj.push_back(cur);
  }
  std::string csv = trajectory_to_csv(traj, drawn);
  CHECK(csv.substr(0, csv.find('\n')) == "step,c1,c2,c3,c4,total,drawn");
  CHECK(csv.find("0,0,2,0,0,2,-1\n") != std::string::npos);
}
