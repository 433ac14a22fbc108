#include <doctest.h>

#include <cmath>

#include "stablelike/rng.hpp"
#include "stablelike/steering.hpp"

using namespace stablelike;

TEST_CASE("project: examples and Pythagorean identity") {
  Eigen::VectorXd v(2), u(2);
  v << 1.0, 1.0;
  u << 1.0, 0.0;
  const Eigen::VectorXd p = project(v, u);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));

  // v parallel to u.
  Eigen::VectorXd w = 3.0 * u;
  const Eigen::VectorXd pw = project(w, u);
  CHECK((pw - w).norm() == doctest::Approx(0.0));

  CHECK_THROWS_AS(project(v, Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("WL1: |p| >= eta|v| implies |v-p| <= sqrt(1-eta^2)|v|") {
  RngStream rng(1, 0);
  for (int i = 0; i < 100000; ++i) {
    Eigen::VectorXd v(3), u(3);
    for (int j = 0; j < 3; ++j) {
      v[j] = 2.0 * rng.uniform01() - 1.0;
      u[j] = 2.0 * rng.uniform01() - 1.0;
    }
    if (u.norm() < 1e-6 || v.norm() < 1e-6) continue;
    const Eigen::VectorXd p = project(v, u);
    // Pythagoras.
    const double lhs = v.squaredNorm();
    const double rhs = p.squaredNorm() + (v - p).squaredNorm();
    REQUIRE(std::abs(lhs - rhs) <= 1e-12 * lhs);
    const double eta = rng.uniform01();
    if (p.norm() >= eta * v.norm()) {
      REQUIRE((v - p).norm() <=
              std::sqrt(1.0 - eta * eta) * v.norm() + 1e-9);
    }
  }
}

TEST_CASE("best_column_step: examples") {
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd e1(2);
  e1 << 1.0, 0.0;
  const ProjectionStep s = best_column_step(I, e1);
  CHECK(s.axis == 0);
  CHECK(s.residual_norm == doctest::Approx(0.0));
  CHECK(s.contraction == doctest::Approx(0.0));

  Eigen::MatrixXd D(2, 2);
  D << 1, 0, 0, 2;
  Eigen::VectorXd v(2);
  v << 1.0, 1.0;
  const ProjectionStep t = best_column_step(D, v);
  CHECK(t.axis == 1);
  CHECK(t.p[0] == doctest::Approx(0.0));
  CHECK(t.p[1] == doctest::Approx(1.0));
  CHECK(t.contraction == doctest::Approx(1.0 / std::sqrt(2.0)));
  // Residual orthogonal to p.
  CHECK(std::abs((v - t.p).dot(t.p)) < 1e-9);
}

TEST_CASE("WL2 suite: pigeonhole and contraction on random instances") {
  RngStream rng(2, 0);
  double max_contraction = 0.0;
  int tested = 0;
  while (tested < 100000) {
    Eigen::MatrixXd A(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) A(i, j) = 8.0 * rng.uniform01() - 4.0;
    // Keep entries of A and A^{-1} bounded by Lambda = 4.
    const double det = A.determinant();
    if (std::abs(det) < 1e-3) continue;
    const Eigen::MatrixXd inv = A.inverse();
    if (inv.cwiseAbs().maxCoeff() > 4.0) continue;
    Eigen::VectorXd v(2);
    v << 2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0;
    if (v.norm() < 1e-6) continue;
    ++tested;
    const ProjectionStep s = best_column_step(A, v);
    // Pigeonhole step of the WL2 proof.
    const Eigen::VectorXd atv = A.transpose() * v;
    REQUIRE(std::abs(atv[s.axis]) >= atv.norm() / 2.0 - 1e-9);
    // Orthogonality.
    REQUIRE(std::abs((v - s.p).dot(s.p)) <=
            1e-9 * std::max(1.0, v.norm() * s.p.norm()));
    REQUIRE(s.contraction < 1.0);
    max_contraction = std::max(max_contraction, s.contraction);
  }
  CHECK(max_contraction <= 0.9999);
}

TEST_CASE("plan_segment: trivial, identity, and geometric decay") {
  const Box region = Box::cube(2, 100.0);
  const MatrixField id = MatrixField::identity(2, region);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);

  CHECK(plan_segment(id, x0, x0, 5).empty());

  Eigen::VectorXd target(2);
  target << 0.3, 0.4;
  const auto plan = plan_segment(id, x0, target, 4);
  REQUIRE(plan.size() >= 2);
  // Greedy argmax picks the largest component first: axis 2 (0-based 1).
  CHECK(plan[0].axis == 1);
  CHECK(plan[0].length == doctest::Approx(0.4));
  CHECK(plan[1].axis == 0);
  CHECK(plan[1].length == doctest::Approx(0.3));
  // Replaying the plan reaches the target.
  Eigen::VectorXd x = x0;
  for (const auto& stage : plan)
    x += stage.length * id.evaluate(x).col(stage.axis);
  CHECK((x - target).norm() < 1e-12);

  // Constant nonsingular A: residual <= 1e-3 |v0| after 20 stages.
  const MatrixField a =
      MatrixField::parse(2, {"1", "0.7", "-0.2", "1.4"}, region);
  RngStream rng(3, 0);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd t(2);
    t << 4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0;
    const auto stages = plan_segment(a, x0, t, 20);
    Eigen::VectorXd pos = x0;
    for (const auto& stage : stages)
      pos += stage.length * a.evaluate(pos).col(stage.axis);
    REQUIRE((t - pos).norm() <= 1e-3 * t.norm() + 1e-12);
  }
}

TEST_CASE("plan_segment residual decays geometrically") {
  const Box region = Box::cube(3, 100.0);
  const MatrixField a = MatrixField::parse(
      3, {"1", "0.3", "0", "0.2", "1.1", "0.1", "0", "-0.4", "0.9"}, region);
  RngStream rng(4, 0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(3), target(3);
    for (int j = 0; j < 3; ++j) target[j] = 2.0 * rng.uniform01() - 1.0;
    const auto stages = plan_segment(a, x0, target, 12);
    Eigen::VectorXd pos = x0;
    double prev = (target - pos).norm();
    for (const auto& stage : stages) {
      pos += stage.length * a.evaluate(pos).col(stage.axis);
      const double res = (target - pos).norm();
      if (prev > 1e-13) REQUIRE(res < prev);
      prev = res;
    }
  }
}

TEST_CASE("TubeSpec validation and position interpolation") {
  TubeSpec spec;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(2), b(2);
  b << 1.0, 0.0;
  spec.times = {0.0, 1.0};
  spec.vertices = {a, b};
  spec.eps = 0.5;
  spec.t0 = 1.0;
  spec.validate();
  CHECK(spec.position(0.0)[0] == doctest::Approx(0.0));
  CHECK(spec.position(0.5)[0] == doctest::Approx(0.5));
  CHECK(spec.position(2.0)[0] == doctest::Approx(1.0));  // clamped

  TubeSpec bad = spec;
  bad.times = {0.0, 0.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("subdivide_tube: piece counts and exact endpoints") {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(2), b(2), c(2);
  b << 1.0, 0.0;
  c << 1.0, 1.0;

  // Single short segment (length eps/8) stays one piece.
  TubeSpec shortspec;
  shortspec.times = {0.0, 1.0};
  Eigen::VectorXd tiny(2);
  tiny << 0.5 / 8.0, 0.0;
  shortspec.vertices = {a, tiny};
  shortspec.eps = 0.5;
  shortspec.t0 = 1.0;
  const TubeSpec sub0 = subdivide_tube(shortspec);
  CHECK(sub0.vertices.size() == 2);

  // Length-1 segment with eps=0.5 -> >= 8 pieces, each < 0.125.
  TubeSpec spec;
  spec.times = {0.0, 1.0};
  spec.vertices = {a, b};
  spec.eps = 0.5;
  spec.t0 = 1.0;
  const TubeSpec sub = subdivide_tube(spec);
  CHECK(sub.vertices.size() - 1 >= 8);
  for (std::size_t i = 1; i < sub.vertices.size(); ++i)
    CHECK((sub.vertices[i] - sub.vertices[i - 1]).norm() < 0.125 + 1e-12);
  CHECK((sub.vertices.front() - a).norm() == 0.0);
  CHECK((sub.vertices.back() - b).norm() == 0.0);

  // L-shaped: interior vertex preserved exactly.
  TubeSpec ell;
  ell.times = {0.0, 0.5, 1.0};
  ell.vertices = {a, b, c};
  ell.eps = 0.5;
  ell.t0 = 1.0;
  const TubeSpec sub2 = subdivide_tube(ell);
  bool found = false;
  for (const auto& v : sub2.vertices)
    if ((v - b).norm() == 0.0) found = true;
  CHECK(found);
  CHECK((sub2.vertices.back() - c).norm() == 0.0);
}
