#include <doctest.h>

#include <cmath>

#include "stablelike/harnack.hpp"

using namespace stablelike;

TEST_CASE("geometry membership and containments") {
  CHECK_THROWS_AS(HarnackGeometry(0.0), std::invalid_argument);
  const HarnackGeometry g(0.1);

  CHECK(g.in_E({3.0, 0.0, 0.0}));
  CHECK(!g.in_E({1.5, 0.0, 0.0}));
  CHECK(g.in_C({0.0, 0.0, 0.0}));
  CHECK(!g.in_C({0.0, 0.2, 0.0}));  // y = 2 eps
  CHECK(g.in_B(HarnackGeometry::w0()));
  CHECK(g.in_Cprime({0.4, 0.05, -0.05}));
  CHECK(!g.in_Cprime({0.6, 0.05, -0.05}));

  // E and B are disjoint (2 > 1); C' subset C subset B — grid check.
  for (int i = -10; i <= 10; ++i)
    for (int j = -10; j <= 10; ++j)
      for (int k = -10; k <= 10; ++k) {
        const Eigen::Vector3d w(i / 10.0, j / 10.0, k / 10.0);
        if (g.in_E(w)) CHECK(!g.in_B(w));
        if (g.in_Cprime(w)) CHECK(g.in_C(w));
        if (g.in_C(w)) CHECK(g.in_B(w));
      }
}

TEST_CASE("single-jump reachability examples") {
  const HarnackGeometry g(0.1);
  CHECK(single_jump_reachability(g, {0.0, 0.0, 0.0}));
  CHECK(!single_jump_reachability(g, HarnackGeometry::w0()));
}

TEST_CASE("reachability equals membership in C on a 50^3 grid of B") {
  const HarnackGeometry g(0.1);
  const int n = 50;
  // Independent brute force: scan each axis-parallel line through w for a
  // point of E.
  const auto brute = [&](const Eigen::Vector3d& w) {
    for (int axis = 0; axis < 3; ++axis) {
      for (int s = -6000; s <= 6000; ++s) {
        Eigen::Vector3d probe = w;
        probe[axis] = s / 1000.0;
        if (g.in_E(probe)) return true;
      }
    }
    return false;
  };
  int checked = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Eigen::Vector3d w(-0.99 + 1.98 * i / (n - 1),
                                -0.99 + 1.98 * j / (n - 1),
                                -0.99 + 1.98 * k / (n - 1));
        if (!g.in_B(w)) continue;
        ++checked;
        const bool expect = brute(w);
        REQUIRE(single_jump_reachability(g, w) == expect);
        REQUIRE(expect == g.in_C(w));
      }
  CHECK(checked > 50000);
}

TEST_CASE("estimate_h: degenerate huge F is an easy target") {
  const HarnackGeometry g(10.0);
  const StableParams params(1.0);
  PathScheme scheme;
  scheme.mode = StepMode::JumpAdapted;
  scheme.truncation = TruncationScheme(0.5);
  scheme.dt = 0.02;
  MCRunSpec run;
  run.n = 4000;
  run.seed = 21;
  const auto est = estimate_h(g, HarnackGeometry::origin(), params, scheme, run);
  CHECK(est.h.ci95_lo > 0.01);
  CHECK(est.h.mean <= 1.0);
  CHECK_THROWS_AS(estimate_h(g, {5.0, 0.0, 0.0}, params, scheme, run),
                  std::invalid_argument);
}

TEST_CASE("every numerator path exits from C") {
  const HarnackGeometry g(0.2);
  const StableParams params(1.0);
  PathScheme scheme;
  scheme.mode = StepMode::JumpAdapted;
  scheme.truncation = TruncationScheme(0.5);
  scheme.dt = 0.02;
  MCRunSpec run;
  run.n = 30000;
  run.seed = 22;
  const auto est = estimate_h(g, HarnackGeometry::origin(), params, scheme, run);
  CHECK(est.numerator_paths > 0);
  CHECK(est.numerator_pre_in_C == est.numerator_paths);
}

TEST_CASE("ratio_curve validates ordering and fills delta-method errors") {
  const StableParams params(1.0);
  PathScheme scheme;
  scheme.mode = StepMode::JumpAdapted;
  scheme.truncation = TruncationScheme(0.5);
  scheme.dt = 0.02;
  MCRunSpec run;
  run.n = 20000;
  run.seed = 23;
  CHECK_THROWS_AS(ratio_curve({0.1, 0.2}, params, scheme, run),
                  std::invalid_argument);
  const auto rows = ratio_curve({0.3, 0.2}, params, scheme, run);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.h0 > 0.0);
    CHECK(r.h0 <= 1.0);
    if (r.hw0 > 0.0) {
      const double rel = std::sqrt(std::pow(r.h0_se / r.h0, 2) +
                                   std::pow(r.hw0_se / r.hw0, 2));
      CHECK(r.ratio_se == doctest::Approx(r.ratio * rel));
    }
  }
}

TEST_CASE("occupation scaling: slope near alpha and horizon-stable") {
  const StableParams params(1.0);
  MCRunSpec run;
  run.n = 3000;
  run.seed = 24;
  const auto res =
      occupation_scaling({1.0, 0.5, 0.25}, params, 10.0, 0.01, run);
  REQUIRE(res.rows.size() == 3);
  for (const auto& row : res.rows) {
    CHECK(row.estimate > 0.0);
    // Integrand nonnegative: doubling the horizon never shrinks it.
    CHECK(row.estimate_double_horizon >= row.estimate);
  }
  CHECK(res.slope > 0.5);
  CHECK(res.slope < 1.5);
  CHECK(!res.horizon_sensitive);
  // eps=1 vs eps=0.5: factor ~2 within 25%.
  const double factor = res.rows[0].estimate / res.rows[1].estimate;
  CHECK(factor == doctest::Approx(2.0).epsilon(0.25));
}
