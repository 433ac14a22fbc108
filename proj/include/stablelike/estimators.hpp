#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stablelike/parallel.hpp"
#include "stablelike/sde.hpp"
#include "stablelike/steering.hpp"

namespace stablelike {

struct MCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t n = 0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t params_hash = 0;

  static MCEstimate from(const Accumulator& acc, std::uint64_t seed,
                         std::uint64_t params_hash = 0);
};

// Stream for path i of the sub-run `tag` of a seeded batch.
inline RngStream make_stream(std::uint64_t seed, std::uint64_t tag,
                             std::uint64_t path_index) {
  return RngStream(seed, (tag << 40) + path_index);
}

struct MCRunSpec {
  std::uint64_t n = 10000;
  std::uint64_t seed = 0;
  int threads = 1;
  double t_cap = 50.0;
  std::uint64_t block_size = 1024;
};

struct ExitMomentsResult {
  MCEstimate mean_tau;
  std::vector<double> tail;  // tail[m-1] = P(tau > m), m = 1..m_max
  int m_max = 5;
  double capped_fraction = 0.0;
  bool unreliable = false;           // > 1% capped paths
  // dt-refinement: an independent run at dt/2 and the Richardson combination
  // 2*mean(dt/2) - mean(dt).
  std::optional<MCEstimate> mean_tau_half_dt;
  double richardson_mean = 0.0;
};

ExitMomentsResult estimate_exit_moments(const MatrixField& field,
                                        const Eigen::VectorXd& x0,
                                        const Domain& domain,
                                        const PathScheme& scheme,
                                        const StableParams& params,
                                        const MCRunSpec& run, int m_max = 5,
                                        bool refine = false);

struct OccupationResult {
  MCEstimate occupation;                       // E^x int_0^tau 1_C
  MCEstimate mean_tau;                         // from the same paths
  std::optional<MCEstimate> occupation_half_dt;
  double capped_fraction = 0.0;
  bool unreliable = false;
};

OccupationResult estimate_occupation(const MatrixField& field,
                                     const Domain& domain, const Domain& c,
                                     const Eigen::VectorXd& x0,
                                     const PathScheme& scheme,
                                     const StableParams& params,
                                     const MCRunSpec& run,
                                     bool refine = false);

// Probability of the two-phase confinement event of the single-jump steering
// construction: for some candidate switch time T (a large jump on the chosen
// axis, or T = 0), the path stays gamma-close to x0 before T and gamma-close
// to x0 + r*A(x0)e_k on [T, t0].
MCEstimate estimate_single_jump_steering(const MatrixField& field,
                                         const Eigen::VectorXd& x0, int axis,
                                         double r, double gamma, double t0,
                                         const StableParams& params,
                                         const MCRunSpec& run,
                                         double dt = 0.0);

// Fraction of paths staying eps-close to the polygonal path at all recorded
// times up to t0. The tube is subdivided first. When several radii are given
// the same streams are reused, so the estimates are monotone in eps by
// construction.
std::vector<MCEstimate> estimate_tube_probability(
    const MatrixField& field, const TubeSpec& spec,
    const std::vector<double>& eps_list, const Eigen::VectorXd& x0,
    const PathScheme& scheme, const StableParams& params,
    const MCRunSpec& run);

MCEstimate estimate_tube_probability(const MatrixField& field,
                                     const TubeSpec& spec,
                                     const Eigen::VectorXd& x0,
                                     const PathScheme& scheme,
                                     const StableParams& params,
                                     const MCRunSpec& run);

struct HittingResult {
  MCEstimate probability;
  double capped_fraction = 0.0;  // neither hit nor exit before the cap
};

HittingResult estimate_hitting(const MatrixField& field, const Domain& target,
                               const Domain& container,
                               const Eigen::VectorXd& x0,
                               const PathScheme& scheme,
                               const StableParams& params,
                               const MCRunSpec& run);

struct HarmonicEstimate {
  std::vector<Eigen::VectorXd> grid;
  std::vector<MCEstimate> values;
  std::string boundary_id;
  double boundary_bound = 1.0;
  double capped_fraction = 0.0;
  bool unreliable = false;
};

// Per-point Monte Carlo mean of g(X_tau) over the exit state from the domain.
// Capped paths are excluded from the mean and counted.
HarmonicEstimate estimate_harmonic(
    const MatrixField& field, const Domain& domain,
    const std::function<double(const Eigen::VectorXd&)>& g,
    const std::string& boundary_id, const std::vector<Eigen::VectorXd>& grid,
    const PathScheme& scheme, const StableParams& params,
    const MCRunSpec& run);

struct HoelderFit {
  double beta_hat = 0.0;
  double c_hat = 0.0;
  double r_squared = 0.0;
  int pairs_used = 0;
};

// Least squares of log|h(x)-h(center)| against log(|x-center|/r) over grid
// points within the radius whose difference clears 3x the joint stderr.
// Throws std::runtime_error if fewer than 4 usable pairs remain.
HoelderFit fit_hoelder(const HarmonicEstimate& estimate,
                       const Eigen::VectorXd& center, double radius);

}  // namespace stablelike
