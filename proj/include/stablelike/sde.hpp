#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "stablelike/field.hpp"
#include "stablelike/rng.hpp"
#include "stablelike/stable.hpp"

namespace stablelike {

enum class StepMode { FixedStep, JumpAdapted };

struct PathScheme {
  StepMode mode = StepMode::FixedStep;
  double dt = 0.01;
  std::optional<TruncationScheme> truncation;  // jump-adapted mode only
  std::uint64_t max_steps = 20'000'000;

  void validate() const;
};

struct Domain {
  enum class Kind { Ball, Box };
  Kind kind;
  Eigen::VectorXd center;
  double radius = 0.0;             // Ball
  Eigen::VectorXd half_widths;     // Box

  bool contains(const Eigen::VectorXd& x) const {
    if (kind == Kind::Ball) return (x - center).norm() < radius;
    for (int i = 0; i < center.size(); ++i)
      if (std::abs(x[i] - center[i]) >= half_widths[i]) return false;
    return true;
  }

  static Domain ball(Eigen::VectorXd center, double radius);
  static Domain box(Eigen::VectorXd center, Eigen::VectorXd half_widths);
  static Domain cube(Eigen::VectorXd center, double side);
};

struct PathSample {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<JumpEvent> jumps;          // large jumps (jump-adapted mode)
  bool gaussian_surrogate = false;       // small-jump residual approximated
  bool step_cap_hit = false;
};

struct ExitRecord {
  bool exited = false;
  double tau = 0.0;
  Eigen::VectorXd state_pre;   // last recorded in-domain state
  Eigen::VectorXd state_post;  // first recorded out-of-domain state
  std::uint64_t steps_used = 0;
  bool capped = false;         // t_cap or step cap reached before exit
};

// Single Euler path of dX = A(X-) dZ on [0, horizon], all states recorded.
PathSample simulate_path(const MatrixField& field, const Eigen::VectorXd& x0,
                         double horizon, const PathScheme& scheme,
                         const StableParams& params, RngStream& rng);

// First exit from the domain, capped at t_cap.
ExitRecord first_exit(const MatrixField& field, const Eigen::VectorXd& x0,
                      const Domain& domain, const PathScheme& scheme,
                      const StableParams& params, RngStream& rng,
                      double t_cap);

struct HitResult {
  bool hit = false;
  ExitRecord record;  // state at hit time (hit) or at container exit
  bool capped = false;
};

// True iff the path enters the target strictly before leaving the container.
HitResult first_hit_before_exit(const MatrixField& field,
                                const Eigen::VectorXd& x0,
                                const Domain& target, const Domain& container,
                                const PathScheme& scheme,
                                const StableParams& params, RngStream& rng,
                                double t_cap);

inline MatrixField scaled_field(const MatrixField& field, double lambda) {
  return field.scaled(lambda);
}

// Streaming walk over one path. The visitor is called at every recorded
// state after the initial one, as visit(t, x, jump) where jump is the large
// jump applied at t (nullptr for small-motion steps); it returns false to
// stop. Returns true if the step/horizon budget completed normally.
template <class Visitor>
bool walk_path(const MatrixField& field, const Eigen::VectorXd& x0,
               double horizon, const PathScheme& scheme,
               const StableParams& params, RngStream& rng, Visitor&& visit) {
  scheme.validate();
  const int d = field.dim();
  Eigen::VectorXd x = x0;
  Eigen::VectorXd dz(d);
  std::uint64_t steps = 0;

  if (scheme.mode == StepMode::FixedStep) {
    const double inc_scale =
        params.scale * std::pow(scheme.dt, 1.0 / params.alpha);
    double t = 0.0;
    while (t < horizon - 1e-12) {
      if (++steps > scheme.max_steps) return false;
      for (int j = 0; j < d; ++j)
        dz[j] = inc_scale * sample_standard_stable(params.alpha, rng);
      x += field.evaluate(x) * dz;
      t += scheme.dt;
      if (!visit(t, x, static_cast<const JumpEvent*>(nullptr))) return true;
    }
    return true;
  }

  // Jump-adapted mode: large jumps at exact Poisson times, Gaussian
  // surrogate of matched variance in between.
  const TruncationScheme trunc = scheme.truncation.value();
  const auto jumps = sample_large_jumps_all(params, trunc, horizon, d, rng);
  const double unit_var = small_jump_variance(params, trunc, 1.0);
  double t = 0.0;
  std::size_t next_jump = 0;
  const auto small_motion = [&](double target_t) -> int {
    // Gaussian sub-steps of length <= dt up to target_t; returns 1 to stop
    // early, -1 on step-cap, 0 otherwise.
    while (t < target_t - 1e-12) {
      if (++steps > scheme.max_steps) return -1;
      const double h = std::min(scheme.dt, target_t - t);
      const double sd = std::sqrt(unit_var * h);
      for (int j = 0; j < d; ++j) dz[j] = sd * rng.normal();
      x += field.evaluate(x) * dz;
      t += h;
      if (!visit(t, x, static_cast<const JumpEvent*>(nullptr))) return 1;
    }
    return 0;
  };
  while (next_jump < jumps.size()) {
    const JumpEvent& ev = jumps[next_jump];
    const int sm = small_motion(ev.time);
    if (sm == 1) return true;
    if (sm == -1) return false;
    x += ev.size * field.evaluate(x).col(ev.coordinate);
    t = ev.time;
    ++next_jump;
    if (!visit(t, x, &ev)) return true;
  }
  const int sm = small_motion(horizon);
  return sm != -1;
}

}  // namespace stablelike
