#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "stablelike/estimators.hpp"

namespace stablelike {

// Geometry of the Harnack counterexample in R^3: the unit ball B at 0, the
// square F = (-eps,eps)^2 in the (y,z) plane, the slab C = (R x F) cap B, the
// target E = (2,4) x F, and the comparison point w0 = (0, 1/2, 0).
struct HarnackGeometry {
  double eps;

  explicit HarnackGeometry(double eps_);

  static Eigen::Vector3d origin() { return Eigen::Vector3d::Zero(); }
  static Eigen::Vector3d w0() { return {0.0, 0.5, 0.0}; }

  bool in_B(const Eigen::Vector3d& w) const { return w.norm() < 1.0; }
  bool in_F(double y, double z) const {
    return std::abs(y) < eps && std::abs(z) < eps;
  }
  bool in_C(const Eigen::Vector3d& w) const {
    return in_F(w[1], w[2]) && in_B(w);
  }
  bool in_Cprime(const Eigen::Vector3d& w) const {
    return in_C(w) && std::abs(w[0]) < 0.5;
  }
  bool in_E(const Eigen::Vector3d& w) const {
    return w[0] > 2.0 && w[0] < 4.0 && in_F(w[1], w[2]);
  }
};

// True iff some single axis-parallel jump from w lands in E. For w in B this
// is equivalent to (y,z) in F: only an x-axis jump can move x into (2,4).
bool single_jump_reachability(const HarnackGeometry& g,
                              const Eigen::Vector3d& w);

struct HarnackEstimate {
  MCEstimate h;
  std::uint64_t numerator_paths = 0;
  std::uint64_t numerator_pre_in_C = 0;  // exact per-path check
  double capped_fraction = 0.0;
};

// h_eps(start) = P^start(W_tau in E_eps) for W with A = I in R^3, estimated
// in jump-adapted mode so the decisive large jump is placed exactly.
HarnackEstimate estimate_h(const HarnackGeometry& g,
                           const Eigen::Vector3d& start,
                           const StableParams& params,
                           const PathScheme& scheme, const MCRunSpec& run);

struct RatioRow {
  double eps;
  double h0, h0_se;
  double hw0, hw0_se;
  double ratio, ratio_se;  // delta-method stderr
  std::uint64_t n;
  std::uint64_t seed;
  bool lower_bound_flag = false;  // h(w0) CI touches 0
  std::uint64_t numerator_paths = 0;
  std::uint64_t numerator_pre_in_C = 0;
};

std::vector<RatioRow> ratio_curve(const std::vector<double>& eps_list,
                                  const StableParams& params,
                                  const PathScheme& scheme,
                                  const MCRunSpec& run);

struct OccupationScalingRow {
  double eps;
  double estimate;
  double stderr_;
  double estimate_double_horizon;
};

struct OccupationScalingResult {
  std::vector<OccupationScalingRow> rows;
  double slope = 0.0;
  double slope_se = 0.0;
  double slope_double_horizon = 0.0;
  bool horizon_sensitive = false;  // doubling moved the slope by > 0.1
};

// Occupation of F_eps by the planar pair (Y,Z) started at 0, truncated at the
// horizon, with the same paths scored against the doubled horizon as a
// sensitivity check. Fits log estimate against log eps.
OccupationScalingResult occupation_scaling(const std::vector<double>& eps_list,
                                           const StableParams& params,
                                           double horizon, double dt,
                                           const MCRunSpec& run);

}  // namespace stablelike
