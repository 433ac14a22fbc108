#include "stablelike/sde.hpp"

#include <stdexcept>

namespace stablelike {

void PathScheme::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("PathScheme: dt must be > 0");
  if (max_steps < 1)
    throw std::invalid_argument("PathScheme: max_steps must be >= 1");
  if (mode == StepMode::JumpAdapted && !truncation)
    throw std::invalid_argument(
        "PathScheme: jump-adapted mode needs a truncation scheme");
}

Domain Domain::ball(Eigen::VectorXd center, double radius) {
  if (!(radius > 0.0))
    throw std::invalid_argument("Domain: radius must be positive");
  Domain d;
  d.kind = Kind::Ball;
  d.center = std::move(center);
  d.radius = radius;
  return d;
}

Domain Domain::box(Eigen::VectorXd center, Eigen::VectorXd half_widths) {
  if ((half_widths.array() <= 0.0).any())
    throw std::invalid_argument("Domain: half-widths must be positive");
  Domain d;
  d.kind = Kind::Box;
  d.center = std::move(center);
  d.half_widths = std::move(half_widths);
  return d;
}

Domain Domain::cube(Eigen::VectorXd center, double side) {
  const int dim = static_cast<int>(center.size());
  return box(std::move(center),
             Eigen::VectorXd::Constant(dim, side / 2.0));
}

PathSample simulate_path(const MatrixField& field, const Eigen::VectorXd& x0,
                         double horizon, const PathScheme& scheme,
                         const StableParams& params, RngStream& rng) {
  PathSample sample;
  sample.gaussian_surrogate = scheme.mode == StepMode::JumpAdapted;
  sample.times.push_back(0.0);
  sample.states.push_back(x0);
  const bool completed = walk_path(
      field, x0, horizon, scheme, params, rng,
      [&](double t, const Eigen::VectorXd& x, const JumpEvent* jump) {
        sample.times.push_back(t);
        sample.states.push_back(x);
        if (jump) sample.jumps.push_back(*jump);
        return true;
      });
  sample.step_cap_hit = !completed;
  return sample;
}

ExitRecord first_exit(const MatrixField& field, const Eigen::VectorXd& x0,
                      const Domain& domain, const PathScheme& scheme,
                      const StableParams& params, RngStream& rng,
                      double t_cap) {
  if (!domain.contains(x0))
    throw std::invalid_argument("first_exit: x0 must lie in the domain");
  ExitRecord rec;
  rec.state_pre = x0;
  rec.state_post = x0;
  std::uint64_t steps = 0;
  const bool completed = walk_path(
      field, x0, t_cap, scheme, params, rng,
      [&](double t, const Eigen::VectorXd& x, const JumpEvent*) {
        ++steps;
        if (!domain.contains(x)) {
          rec.exited = true;
          rec.tau = t;
          rec.state_post = x;
          return false;
        }
        rec.state_pre = x;
        return true;
      });
  rec.steps_used = steps;
  if (!rec.exited) {
    rec.tau = t_cap;
    rec.capped = true;
  }
  if (!completed) rec.capped = true;
  return rec;
}

HitResult first_hit_before_exit(const MatrixField& field,
                                const Eigen::VectorXd& x0,
                                const Domain& target, const Domain& container,
                                const PathScheme& scheme,
                                const StableParams& params, RngStream& rng,
                                double t_cap) {
  if (!container.contains(x0))
    throw std::invalid_argument("first_hit_before_exit: x0 not in container");
  HitResult res;
  res.record.state_pre = x0;
  res.record.state_post = x0;
  if (target.contains(x0)) {
    res.hit = true;
    res.record.exited = true;
    res.record.tau = 0.0;
    return res;
  }
  bool left_container = false;
  std::uint64_t steps = 0;
  const bool completed = walk_path(
      field, x0, t_cap, scheme, params, rng,
      [&](double t, const Eigen::VectorXd& x, const JumpEvent*) {
        ++steps;
        if (target.contains(x)) {
          res.hit = true;
          res.record.exited = true;
          res.record.tau = t;
          res.record.state_post = x;
          return false;
        }
        if (!container.contains(x)) {
          left_container = true;
          res.record.exited = true;
          res.record.tau = t;
          res.record.state_post = x;
          return false;
        }
        res.record.state_pre = x;
        return true;
      });
  res.record.steps_used = steps;
  if (!res.hit && !left_container) {
    res.capped = true;  // counted as neither
    res.record.capped = true;
  }
  if (!completed) res.capped = true;
  return res;
}

}  // namespace stablelike
