#include "stablelike/harnack.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stablelike {

HarnackGeometry::HarnackGeometry(double eps_) : eps(eps_) {
  if (!(eps > 0.0))
    throw std::invalid_argument("HarnackGeometry: eps must be positive");
}

bool single_jump_reachability(const HarnackGeometry& g,
                              const Eigen::Vector3d& w) {
  // x-axis jump: needs (y,z) in F and some x' in (2,4) (always available).
  if (g.in_F(w[1], w[2])) return true;
  // y-axis jump: x and z stay fixed, so x must already be in (2,4).
  if (w[0] > 2.0 && w[0] < 4.0 && std::abs(w[2]) < g.eps) return true;
  // z-axis jump symmetric.
  if (w[0] > 2.0 && w[0] < 4.0 && std::abs(w[1]) < g.eps) return true;
  return false;
}

HarnackEstimate estimate_h(const HarnackGeometry& g,
                           const Eigen::Vector3d& start,
                           const StableParams& params,
                           const PathScheme& scheme, const MCRunSpec& run) {
  if (!g.in_B(start))
    throw std::invalid_argument("estimate_h: start must lie in B");
  static const MatrixField field =
      MatrixField::identity(3, Box::cube(3, 8.0));
  const Domain ball = Domain::ball(Eigen::VectorXd::Zero(3), 1.0);

  struct Block {
    Accumulator acc;
    std::uint64_t numer = 0;
    std::uint64_t numer_pre_in_c = 0;
    std::uint64_t capped = 0;
  };
  const std::uint64_t n_blocks =
      (run.n + run.block_size - 1) / run.block_size;
  std::vector<Block> blocks(n_blocks);
  const Eigen::VectorXd x0 = start;
  for_each_block(
      run.n, run.block_size, run.threads,
      [&](std::uint64_t bi, std::uint64_t lo, std::uint64_t hi) {
        Block& b = blocks[bi];
        for (std::uint64_t i = lo; i < hi; ++i) {
          RngStream rng = make_stream(run.seed, 8, i);
          const ExitRecord rec = first_exit(field, x0, ball, scheme, params,
                                            rng, run.t_cap);
          if (rec.capped && !rec.exited) {
            ++b.capped;
            b.acc.add(0.0);
            continue;
          }
          const Eigen::Vector3d post = rec.state_post;
          const bool in_e = g.in_E(post);
          b.acc.add(in_e ? 1.0 : 0.0);
          if (in_e) {
            ++b.numer;
            if (g.in_C(rec.state_pre)) ++b.numer_pre_in_c;
          }
        }
      });
  HarnackEstimate est;
  Accumulator total;
  std::uint64_t capped = 0;
  for (const auto& b : blocks) {
    total.merge(b.acc);
    est.numerator_paths += b.numer;
    est.numerator_pre_in_C += b.numer_pre_in_c;
    capped += b.capped;
  }
  est.h = MCEstimate::from(total, run.seed);
  est.capped_fraction =
      static_cast<double>(capped) / static_cast<double>(run.n);
  return est;
}

std::vector<RatioRow> ratio_curve(const std::vector<double>& eps_list,
                                  const StableParams& params,
                                  const PathScheme& scheme,
                                  const MCRunSpec& run) {
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("ratio_curve: eps list must decrease");
  std::vector<RatioRow> rows;
  MCRunSpec sub = run;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const HarnackGeometry g(eps_list[i]);
    // Independent streams per eps and per start point.
    sub.seed = run.seed + 1000 * (i + 1);
    const HarnackEstimate at0 =
        estimate_h(g, HarnackGeometry::origin(), params, scheme, sub);
    sub.seed = run.seed + 1000 * (i + 1) + 500;
    const HarnackEstimate atw0 =
        estimate_h(g, HarnackGeometry::w0(), params, scheme, sub);
    RatioRow row;
    row.eps = eps_list[i];
    row.h0 = at0.h.mean;
    row.h0_se = at0.h.stderr_;
    row.hw0 = atw0.h.mean;
    row.hw0_se = atw0.h.stderr_;
    row.n = run.n;
    row.seed = run.seed;
    row.numerator_paths = at0.numerator_paths + atw0.numerator_paths;
    row.numerator_pre_in_C =
        at0.numerator_pre_in_C + atw0.numerator_pre_in_C;
    row.lower_bound_flag = atw0.h.ci95_lo <= 0.0;
    if (atw0.h.mean > 0.0) {
      row.ratio = row.h0 / row.hw0;
      const double rel0 = row.h0 > 0.0 ? row.h0_se / row.h0 : 0.0;
      const double relw = row.hw0_se / row.hw0;
      row.ratio_se = row.ratio * std::sqrt(rel0 * rel0 + relw * relw);
    } else {
      row.ratio = std::numeric_limits<double>::infinity();
      row.ratio_se = 0.0;
      row.lower_bound_flag = true;
    }
    rows.push_back(row);
  }
  return rows;
}

OccupationScalingResult occupation_scaling(const std::vector<double>& eps_list,
                                           const StableParams& params,
                                           double horizon, double dt,
                                           const MCRunSpec& run) {
  const double horizon2 = 2.0 * horizon;
  const std::uint64_t n_steps =
      static_cast<std::uint64_t>(std::llround(horizon2 / dt));
  const std::uint64_t steps_single =
      static_cast<std::uint64_t>(std::llround(horizon / dt));
  const std::size_t n_eps = eps_list.size();

  struct Block {
    std::vector<Accumulator> occ, occ2;
  };
  const std::uint64_t n_blocks =
      (run.n + run.block_size - 1) / run.block_size;
  std::vector<Block> blocks(n_blocks);
  for (auto& b : blocks) {
    b.occ.resize(n_eps);
    b.occ2.resize(n_eps);
  }
  const double inc_scale = params.scale * std::pow(dt, 1.0 / params.alpha);
  for_each_block(
      run.n, run.block_size, run.threads,
      [&](std::uint64_t bi, std::uint64_t lo, std::uint64_t hi) {
        Block& b = blocks[bi];
        std::vector<double> acc(n_eps), acc2(n_eps);
        for (std::uint64_t i = lo; i < hi; ++i) {
          RngStream rng = make_stream(run.seed, 9, i);
          double y = 0.0, z = 0.0;
          std::fill(acc.begin(), acc.end(), 0.0);
          std::fill(acc2.begin(), acc2.end(), 0.0);
          for (std::uint64_t s = 0; s < n_steps; ++s) {
            // Left endpoint: score the state entering the step.
            const double ay = std::abs(y), az = std::abs(z);
            for (std::size_t e = 0; e < n_eps; ++e) {
              if (ay < eps_list[e] && az < eps_list[e]) {
                acc2[e] += dt;
                if (s < steps_single) acc[e] += dt;
              }
            }
            y += inc_scale * sample_standard_stable(params.alpha, rng);
            z += inc_scale * sample_standard_stable(params.alpha, rng);
          }
          for (std::size_t e = 0; e < n_eps; ++e) {
            b.occ[e].add(acc[e]);
            b.occ2[e].add(acc2[e]);
          }
        }
      });

  OccupationScalingResult result;
  std::vector<double> xs, ys, ys2, ws;
  for (std::size_t e = 0; e < n_eps; ++e) {
    Accumulator occ, occ2;
    for (const auto& b : blocks) {
      occ.merge(b.occ[e]);
      occ2.merge(b.occ2[e]);
    }
    OccupationScalingRow row;
    row.eps = eps_list[e];
    row.estimate = occ.mean();
    row.stderr_ = occ.stderr_of_mean();
    row.estimate_double_horizon = occ2.mean();
    result.rows.push_back(row);
    xs.push_back(std::log(eps_list[e]));
    ys.push_back(std::log(occ.mean()));
    ys2.push_back(std::log(occ2.mean()));
    ws.push_back(occ.stderr_of_mean() / occ.mean());  // se of log estimate
  }
  const auto fit = [&](const std::vector<double>& y, double* se) {
    const std::size_t m = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      mx += xs[i];
      my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (y[i] - my);
    }
    if (se) {
      // Propagate per-point MC noise through the least-squares weights.
      double var = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double w = (xs[i] - mx) / sxx;
        var += w * w * ws[i] * ws[i];
      }
      *se = std::sqrt(var);
    }
    return sxy / sxx;
  };
  result.slope = fit(ys, &result.slope_se);
  result.slope_double_horizon = fit(ys2, nullptr);
  result.horizon_sensitive =
      std::abs(result.slope_double_horizon - result.slope) > 0.1;
  return result;
}

}  // namespace stablelike
