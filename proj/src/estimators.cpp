#include "stablelike/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stablelike {

MCEstimate MCEstimate::from(const Accumulator& acc, std::uint64_t seed,
                            std::uint64_t params_hash) {
  MCEstimate e;
  e.mean = acc.mean();
  e.stderr_ = acc.stderr_of_mean();
  e.n = acc.n;
  e.ci95_lo = e.mean - 1.96 * e.stderr_;
  e.ci95_hi = e.mean + 1.96 * e.stderr_;
  e.seed = seed;
  e.params_hash = params_hash;
  return e;
}

namespace {

struct TauBatch {
  Accumulator tau;
  std::vector<std::uint64_t> tail_counts;
  std::uint64_t capped = 0;
};

TauBatch run_exit_batch(const MatrixField& field, const Eigen::VectorXd& x0,
                        const Domain& domain, const PathScheme& scheme,
                        const StableParams& params, const MCRunSpec& run,
                        int m_max, std::uint64_t tag) {
  const std::uint64_t n_blocks =
      (run.n + run.block_size - 1) / run.block_size;
  std::vector<TauBatch> blocks(n_blocks);
  for (auto& b : blocks) b.tail_counts.assign(m_max, 0);
  for_each_block(run.n, run.block_size, run.threads,
                 [&](std::uint64_t bi, std::uint64_t lo, std::uint64_t hi) {
                   TauBatch& b = blocks[bi];
                   for (std::uint64_t i = lo; i < hi; ++i) {
                     RngStream rng = make_stream(run.seed, tag, i);
                     const ExitRecord rec = first_exit(
                         field, x0, domain, scheme, params, rng, run.t_cap);
                     b.tau.add(rec.tau);
                     if (rec.capped) ++b.capped;
                     for (int m = 1; m <= m_max; ++m)
                       if (rec.tau > m) ++b.tail_counts[m - 1];
                   }
                 });
  TauBatch total;
  total.tail_counts.assign(m_max, 0);
  for (const auto& b : blocks) {
    total.tau.merge(b.tau);
    total.capped += b.capped;
    for (int m = 0; m < m_max; ++m) total.tail_counts[m] += b.tail_counts[m];
  }
  return total;
}

}  // namespace

ExitMomentsResult estimate_exit_moments(const MatrixField& field,
                                        const Eigen::VectorXd& x0,
                                        const Domain& domain,
                                        const PathScheme& scheme,
                                        const StableParams& params,
                                        const MCRunSpec& run, int m_max,
                                        bool refine) {
  ExitMomentsResult result;
  result.m_max = m_max;
  const TauBatch batch = run_exit_batch(field, x0, domain, scheme, params,
                                        run, m_max, /*tag=*/1);
  result.mean_tau = MCEstimate::from(batch.tau, run.seed);
  result.tail.resize(m_max);
  for (int m = 0; m < m_max; ++m)
    result.tail[m] = static_cast<double>(batch.tail_counts[m]) /
                     static_cast<double>(run.n);
  result.capped_fraction =
      static_cast<double>(batch.capped) / static_cast<double>(run.n);
  result.unreliable = result.capped_fraction > 0.01;
  if (refine) {
    PathScheme half = scheme;
    half.dt = scheme.dt / 2.0;
    const TauBatch fine = run_exit_batch(field, x0, domain, half, params, run,
                                         m_max, /*tag=*/2);
    result.mean_tau_half_dt = MCEstimate::from(fine.tau, run.seed);
    result.richardson_mean =
        2.0 * result.mean_tau_half_dt->mean - result.mean_tau.mean;
  }
  return result;
}

namespace {

struct OccBatch {
  Accumulator occ;
  Accumulator tau;
  std::uint64_t capped = 0;
};

OccBatch run_occupation_batch(const MatrixField& field, const Domain& domain,
                              const Domain& c, const Eigen::VectorXd& x0,
                              const PathScheme& scheme,
                              const StableParams& params,
                              const MCRunSpec& run, std::uint64_t tag) {
  const std::uint64_t n_blocks =
      (run.n + run.block_size - 1) / run.block_size;
  std::vector<OccBatch> blocks(n_blocks);
  for_each_block(
      run.n, run.block_size, run.threads,
      [&](std::uint64_t bi, std::uint64_t lo, std::uint64_t hi) {
        OccBatch& b = blocks[bi];
        for (std::uint64_t i = lo; i < hi; ++i) {
          RngStream rng = make_stream(run.seed, tag, i);
          // Left-endpoint occupation sum along the first-exit path.
          double occ = c.contains(x0) ? scheme.dt : 0.0;
          double tau = run.t_cap;
          bool exited = false;
          walk_path(field, x0, run.t_cap, scheme, params, rng,
                    [&](double t, const Eigen::VectorXd& x, const JumpEvent*) {
                      if (!domain.contains(x)) {
                        exited = true;
                        tau = t;
                        return false;
                      }
                      if (c.contains(x)) occ += scheme.dt;
                      return true;
                    });
          // The start state counts once; the state at the final in-domain
          // grid point is the last left endpoint, so drop one dt if the path
          // never left (the cap) to keep the sum within [0, tau].
          if (!exited) ++b.capped;
          b.occ.add(std::min(occ, tau));
          b.tau.add(tau);
        }
      });
  OccBatch total;
  for (const auto& b : blocks) {
    total.occ.merge(b.occ);
    total.tau.merge(b.tau);
    total.capped += b.capped;
  }
  return total;
}

}  // namespace

OccupationResult estimate_occupation(const MatrixField& field,
                                     const Domain& domain, const Domain& c,
                                     const Eigen::VectorXd& x0,
                                     const PathScheme& scheme,
                                     const StableParams& params,
                                     const MCRunSpec& run, bool refine) {
  OccupationResult result;
  const OccBatch batch = run_occupation_batch(field, domain, c, x0, scheme,
                                              params, run, /*tag=*/3);
  result.occupation = MCEstimate::from(batch.occ, run.seed);
  result.mean_tau = MCEstimate::from(batch.tau, run.seed);
  result.capped_fraction =
      static_cast<double>(batch.capped) / static_cast<double>(run.n);
  result.unreliable = result.capped_fraction > 0.01;
  if (refine) {
    PathScheme half = scheme;
    half.dt = scheme.dt / 2.0;
    const OccBatch fine = run_occupation_batch(field, domain, c, x0, half,
                                               params, run, /*tag=*/4);
    result.occupation_half_dt = MCEstimate::from(fine.occ, run.seed);
  }
  return result;
}

MCEstimate estimate_single_jump_steering(const MatrixField& field,
                                         const Eigen::VectorXd& x0, int axis,
                                         double r, double gamma, double t0,
                                         const StableParams& params,
                                         const MCRunSpec& run, double dt) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::invalid_argument("steering: gamma must be in (0,1)");
  if (std::abs(r) > 1.0)
    throw std::invalid_argument("steering: r must be in [-1,1]");
  const int d = field.dim();
  const Eigen::VectorXd v_k = field.evaluate(x0).col(axis);
  const Eigen::VectorXd shifted = x0 + r * v_k;

  // Truncation level from the confinement budget of Eq (Q1) at a fixed
  // delta, deliberately independent of gamma so that runs with different
  // gamma on the same seed share paths (the event is then monotone in gamma
  // pathwise). Capped by the jump target when one is requested.
  double beta = choose_beta(t0, 0.1, d, params, 1.0);
  if (r != 0.0) beta = std::min(beta, std::abs(r));
  beta = std::max(beta, 1e-3);
  PathScheme scheme;
  scheme.mode = StepMode::JumpAdapted;
  scheme.truncation = TruncationScheme(beta);
  scheme.dt = dt > 0.0 ? dt : t0 / 256.0;

  const std::uint64_t n_blocks =
      (run.n + run.block_size - 1) / run.block_size;
  std::vector<Accumulator> blocks(n_blocks);
  for_each_block(
      run.n, run.block_size, run.threads,
      [&](std::uint64_t bi, std::uint64_t lo, std::uint64_t hi) {
        std::vector<double> times;
        std::vector<Eigen::VectorXd> states;
        std::vector<double> jump_times;
        for (std::uint64_t i = lo; i < hi; ++i) {
          RngStream rng = make_stream(run.seed, 5, i);
          times.assign(1, 0.0);
          states.assign(1, x0);
          jump_times.clear();
          walk_path(field, x0, t0, scheme, params, rng,
                    [&](double t, const Eigen::VectorXd& x,
                        const JumpEvent* jump) {
                      times.push_back(t);
                      states.push_back(x);
                      if (jump && jump->coordinate == axis)
                        jump_times.push_back(t);
                      return true;
                    });
          // Candidate switch times: T = 0 plus each axis-k large jump.
          std::vector<double> candidates{0.0};
          candidates.insert(candidates.end(), jump_times.begin(),
                            jump_times.end());
          bool ok = false;
          for (const double t_switch : candidates) {
            bool good = true;
            for (std::size_t s = 0; s < times.size() && good; ++s) {
              const Eigen::VectorXd& anchor =
                  times[s] < t_switch ? x0 : shifted;
              good = (states[s] - anchor).norm() < gamma;
            }
            if (good) {
              ok = true;
              break;
            }
          }
          blocks[bi].add(ok ? 1.0 : 0.0);
        }
      });
  Accumulator total;
  for (const auto& b : blocks) total.merge(b);
  return MCEstimate::from(total, run.seed);
}

std::vector<MCEstimate> estimate_tube_probability(
    const MatrixField& field, const TubeSpec& spec,
    const std::vector<double>& eps_list, const Eigen::VectorXd& x0,
    const PathScheme& scheme, const StableParams& params,
    const MCRunSpec& run) {
  if ((spec.vertices.front() - x0).norm() > 1e-12)
    throw std::invalid_argument("tube: phi(0) must equal x0");
  const TubeSpec fine = subdivide_tube(spec);
  const double eps_max = *std::max_element(eps_list.begin(), eps_list.end());

  const std::uint64_t n_blocks =
      (run.n + run.block_size - 1) / run.block_size;
  std::vector<std::vector<Accumulator>> blocks(
      n_blocks, std::vector<Accumulator>(eps_list.size()));
  for_each_block(
      run.n, run.block_size, run.threads,
      [&](std::uint64_t bi, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
          RngStream rng = make_stream(run.seed, 6, i);
          double max_dev = 0.0;
          walk_path(field, x0, spec.t0, scheme, params, rng,
                    [&](double t, const Eigen::VectorXd& x, const JumpEvent*) {
                      const double dev = (x - fine.position(t)).norm();
                      max_dev = std::max(max_dev, dev);
                      // Once outside every requested tube the path's
                      // contribution is settled.
                      return max_dev < eps_max;
                    });
          for (std::size_t e = 0; e < eps_list.size(); ++e)
            blocks[bi][e].add(max_dev < eps_list[e] ? 1.0 : 0.0);
        }
      });
  std::vector<MCEstimate> out(eps_list.size());
  for (std::size_t e = 0; e < eps_list.size(); ++e) {
    Accumulator total;
    for (const auto& b : blocks) total.merge(b[e]);
    out[e] = MCEstimate::from(total, run.seed);
  }
  return out;
}

MCEstimate estimate_tube_probability(const MatrixField& field,
                                     const TubeSpec& spec,
                                     const Eigen::VectorXd& x0,
                                     const PathScheme& scheme,
                                     const StableParams& params,
                                     const MCRunSpec& run) {
  return estimate_tube_probability(field, spec, {spec.eps}, x0, scheme,
                                   params, run)[0];
}

HittingResult estimate_hitting(const MatrixField& field, const Domain& target,
                               const Domain& container,
                               const Eigen::VectorXd& x0,
                               const PathScheme& scheme,
                               const StableParams& params,
                               const MCRunSpec& run) {
  const std::uint64_t n_blocks =
      (run.n + run.block_size - 1) / run.block_size;
  struct Block {
    Accumulator hits;
    std::uint64_t capped = 0;
  };
  std::vector<Block> blocks(n_blocks);
  for_each_block(run.n, run.block_size, run.threads,
                 [&](std::uint64_t bi, std::uint64_t lo, std::uint64_t hi) {
                   for (std::uint64_t i = lo; i < hi; ++i) {
                     RngStream rng = make_stream(run.seed, 7, i);
                     const HitResult res =
                         first_hit_before_exit(field, x0, target, container,
                                               scheme, params, rng, run.t_cap);
                     if (res.capped) {
                       ++blocks[bi].capped;  // counted as neither
                     } else {
                       blocks[bi].hits.add(res.hit ? 1.0 : 0.0);
                     }
                   }
                 });
  Accumulator total;
  std::uint64_t capped = 0;
  for (const auto& b : blocks) {
    total.merge(b.hits);
    capped += b.capped;
  }
  HittingResult result;
  result.probability = MCEstimate::from(total, run.seed);
  result.capped_fraction =
      static_cast<double>(capped) / static_cast<double>(run.n);
  return result;
}

HarmonicEstimate estimate_harmonic(
    const MatrixField& field, const Domain& domain,
    const std::function<double(const Eigen::VectorXd&)>& g,
    const std::string& boundary_id, const std::vector<Eigen::VectorXd>& grid,
    const PathScheme& scheme, const StableParams& params,
    const MCRunSpec& run) {
  HarmonicEstimate est;
  est.grid = grid;
  est.boundary_id = boundary_id;
  std::uint64_t capped_total = 0;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const std::uint64_t n_blocks =
        (run.n + run.block_size - 1) / run.block_size;
    struct Block {
      Accumulator acc;
      std::uint64_t capped = 0;
    };
    std::vector<Block> blocks(n_blocks);
    for_each_block(
        run.n, run.block_size, run.threads,
        [&](std::uint64_t bi, std::uint64_t lo, std::uint64_t hi) {
          for (std::uint64_t i = lo; i < hi; ++i) {
            RngStream rng = make_stream(run.seed, 100 + p, i);
            const ExitRecord rec = first_exit(field, grid[p], domain, scheme,
                                              params, rng, run.t_cap);
            if (rec.capped)
              ++blocks[bi].capped;
            else
              blocks[bi].acc.add(g(rec.state_post));
          }
        });
    Accumulator total;
    std::uint64_t capped = 0;
    for (const auto& b : blocks) {
      total.merge(b.acc);
      capped += b.capped;
    }
    est.values.push_back(MCEstimate::from(total, run.seed));
    capped_total += capped;
  }
  est.capped_fraction = static_cast<double>(capped_total) /
                        static_cast<double>(run.n * grid.size());
  est.unreliable = est.capped_fraction > 0.01;
  return est;
}

HoelderFit fit_hoelder(const HarmonicEstimate& estimate,
                       const Eigen::VectorXd& center, double radius) {
  // Locate the center in the grid.
  std::size_t center_idx = estimate.grid.size();
  for (std::size_t i = 0; i < estimate.grid.size(); ++i)
    if ((estimate.grid[i] - center).norm() < 1e-12) center_idx = i;
  if (center_idx == estimate.grid.size())
    throw std::invalid_argument("fit_hoelder: center must be a grid point");
  const MCEstimate& hc = estimate.values[center_idx];

  int in_radius = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < estimate.grid.size(); ++i) {
    if (i == center_idx) continue;
    const double dist = (estimate.grid[i] - center).norm();
    if (dist > radius || dist == 0.0) continue;
    ++in_radius;
    const MCEstimate& hi = estimate.values[i];
    const double diff = std::abs(hi.mean - hc.mean);
    const double joint = std::sqrt(hi.stderr_ * hi.stderr_ +
                                   hc.stderr_ * hc.stderr_);
    if (diff <= 3.0 * joint) continue;  // indistinguishable from noise
    xs.push_back(std::log(dist / radius));
    ys.push_back(std::log(diff));
  }
  if (in_radius < 8)
    throw std::runtime_error("fit_hoelder: need >= 8 grid points in radius");
  if (xs.size() < 4)
    throw std::runtime_error("fit_hoelder: fewer than 4 usable pairs");

  const std::size_t m = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  HoelderFit fit;
  fit.beta_hat = sxy / sxx;
  fit.c_hat = std::exp(my - fit.beta_hat * mx);
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.pairs_used = static_cast<int>(m);
  return fit;
}

}  // namespace stablelike
