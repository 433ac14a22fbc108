#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stablelike/rng.hpp"

namespace stablelike {

// Driving law: one-dimensional symmetric stable with characteristic function
// exp(-t * (scale*|u|)^alpha) per unit-time increment.
struct StableParams {
  double alpha;
  double scale;

  explicit StableParams(double alpha_, double scale_ = 1.0)
      : alpha(alpha_), scale(scale_) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
      throw std::invalid_argument("StableParams: alpha must be in (0,2)");
    if (!(scale > 0.0))
      throw std::invalid_argument("StableParams: scale must be positive");
  }
};

// Large/small jump split at |h| = beta.
struct TruncationScheme {
  double beta;

  explicit TruncationScheme(double beta_) : beta(beta_) {
    if (!(beta > 0.0))
      throw std::invalid_argument("TruncationScheme: beta must be positive");
  }
};

// One large jump of a single driver coordinate (coordinates never jump
// simultaneously).
struct JumpEvent {
  double time;
  int coordinate;  // 0-based axis index
  double size;
};

// Normalization constant of the Levy density c1*|h|^{-1-alpha}, fixed by the
// identity  integral (1-cos(u h)) c1 |h|^{-1-alpha} dh = |u|^alpha.
// Computed once per alpha by quadrature and cached.
double levy_c1(double alpha);

// One increment of the driver over dt; law exp(-dt*(scale*|u|)^alpha).
double sample_increment(const StableParams& params, double dt, RngStream& rng);

// Standardized sample with characteristic function exp(-|u|^alpha)
// (Chambers-Mallows-Stuck).
double sample_standard_stable(double alpha, RngStream& rng);

// Poisson rate of jumps with |h| > beta: 2*c1*beta^{-alpha}/alpha (times
// scale^alpha).
double large_jump_rate(const StableParams& params, double beta);

// Large jumps of one driver coordinate on [0, horizon], ordered by time.
std::vector<JumpEvent> sample_large_jumps(const StableParams& params,
                                          const TruncationScheme& scheme,
                                          double horizon, RngStream& rng,
                                          int coordinate = 0);

// Large jumps of d independent coordinates merged and sorted by time.
std::vector<JumpEvent> sample_large_jumps_all(const StableParams& params,
                                              const TruncationScheme& scheme,
                                              double horizon, int dim,
                                              RngStream& rng);

// Predictable quadratic variation of the small-jump residual over [0,t]:
// t * integral_{-beta}^{beta} x^2 c1 |x|^{-1-alpha} dx.
double small_jump_variance(const StableParams& params,
                           const TruncationScheme& scheme, double t);

// Truncation level beta solving c4*t0*beta^{2-alpha} = delta^2/(2d).
double choose_beta(double t0, double delta, int dim,
                   const StableParams& params, double c4);

}  // namespace stablelike
