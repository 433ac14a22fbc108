// Acceptance gate: one line per criterion, exit 0 only if all pass.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "stablelike/estimators.hpp"
#include "stablelike/harnack.hpp"
#include "stablelike/stable.hpp"
#include "stablelike/steering.hpp"

using namespace stablelike;

namespace {

constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% quantile

int g_failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& note) {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
              what, note.empty() ? "" : " -- ", note.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
// ECF of 10^6 unit-time increments vs exp(-|u|^alpha).
void criterion_1() {
  const int n = 1000000;
  bool ok = true;
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 1.5}) {
    StableParams params(alpha);
    RngStream rng(101, static_cast<std::uint64_t>(10 * alpha));
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = sample_increment(params, 1.0, rng);
    for (double u : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      double sum = 0.0, sum_sq = 0.0;
      for (double x : xs) {
        const double c = std::cos(u * x);
        sum += c;
        sum_sq += c * c;
      }
      const double mean = sum / n;
      const double var = (sum_sq - n * mean * mean) / (n - 1);
      const double se = std::sqrt(std::max(var, 0.0) / n);
      const double target = std::exp(-std::pow(u, alpha));
      const double excess = std::abs(mean - target) - 3.0 * se;
      worst = std::max(worst, excess);
      if (std::abs(mean - target) >= 3.0 * se + 0.005) ok = false;
    }
  }
  report(1, "driver ECF matches exp(-|u|^alpha)", ok,
         fmt("worst |ecf-target|-3se = %.2e (budget 5e-3)", worst));
}

// ---------------------------------------------------------------- criterion 2
// d=1, alpha=1, interval (-1,1): dt-refined mean exit time vs the closed-form
// value E[tau] = Gamma(d/2) / (2^a Gamma(1+a/2) Gamma((d+a)/2)) = 1, frozen
// from the independent quadrature oracle in the unit suite.
void criterion_2() {
  const double oracle = std::tgamma(0.5) /
                        (2.0 * std::tgamma(1.5) * std::tgamma(1.0));
  const MatrixField id = MatrixField::identity(1, Box::cube(1, 10.0));
  const Domain ball = Domain::ball(Eigen::VectorXd::Zero(1), 1.0);
  PathScheme scheme;
  scheme.dt = 0.005;
  MCRunSpec run;
  run.n = 10000;
  run.seed = 102;
  const auto res = estimate_exit_moments(id, Eigen::VectorXd::Zero(1), ball,
                                         scheme, StableParams(1.0), run, 5,
                                         /*refine=*/true);
  const double rel = std::abs(res.richardson_mean - oracle) / oracle;
  report(2, "exit-time oracle within 5%", rel < 0.05 && !res.unreliable,
         fmt("richardson=%.4f oracle=%.4f rel=%.3f", res.richardson_mean,
             oracle, rel));
}

// ---------------------------------------------------------------- criterion 3
// d=2 ball exit tail: log P(tau>m) linear in m with negative slope.
// alpha=0.5 keeps all five tail counts well resolved at n=1e5.
void criterion_3() {
  const MatrixField id = MatrixField::identity(2, Box::cube(2, 10.0));
  const Domain ball = Domain::ball(Eigen::VectorXd::Zero(2), 1.0);
  PathScheme scheme;
  scheme.dt = 0.01;
  MCRunSpec run;
  run.n = 100000;
  run.seed = 103;
  const auto res = estimate_exit_moments(id, Eigen::VectorXd::Zero(2), ball,
                                         scheme, StableParams(0.5), run, 5);
  std::vector<double> xs, ys;
  bool positive = true;
  for (int m = 1; m <= 5; ++m) {
    if (res.tail[m - 1] <= 0.0) positive = false;
    else {
      xs.push_back(m);
      ys.push_back(std::log(res.tail[m - 1]));
    }
  }
  double slope = 0.0, r2 = 0.0;
  if (positive) {
    const std::size_t m = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < m; ++i) { mx += xs[i]; my += ys[i]; }
    mx /= m; my /= m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
      syy += (ys[i] - my) * (ys[i] - my);
    }
    slope = sxy / sxx;
    r2 = sxy * sxy / (sxx * syy);
  }
  report(3, "exit tail log-linear (geometric decay)",
         positive && slope < 0.0 && r2 > 0.95,
         fmt("slope=%.3f r2=%.4f", slope, r2));
}

// ---------------------------------------------------------------- criterion 4
// WL1/WL2 randomized suites: zero violations at 1e-9; pigeonhole in every
// instance.
void criterion_4() {
  RngStream rng(104, 0);
  int wl1_bad = 0;
  for (int i = 0; i < 100000; ++i) {
    Eigen::VectorXd v(3), u(3);
    for (int j = 0; j < 3; ++j) {
      v[j] = 2.0 * rng.uniform01() - 1.0;
      u[j] = 2.0 * rng.uniform01() - 1.0;
    }
    if (u.norm() < 1e-6 || v.norm() < 1e-6) continue;
    const Eigen::VectorXd p = project(v, u);
    const double eta = rng.uniform01();
    if (p.norm() >= eta * v.norm() &&
        (v - p).norm() > std::sqrt(1.0 - eta * eta) * v.norm() + 1e-9)
      ++wl1_bad;
  }
  RngStream rng2(104, 1);
  int wl2_bad = 0, pigeon_bad = 0, tested = 0;
  while (tested < 100000) {
    Eigen::MatrixXd a(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a(i, j) = 8.0 * rng2.uniform01() - 4.0;
    if (std::abs(a.determinant()) < 1e-3 ||
        a.inverse().cwiseAbs().maxCoeff() > 4.0)
      continue;
    Eigen::VectorXd v(2);
    v << 2.0 * rng2.uniform01() - 1.0, 2.0 * rng2.uniform01() - 1.0;
    if (v.norm() < 1e-6) continue;
    ++tested;
    const ProjectionStep s = best_column_step(a, v);
    const Eigen::VectorXd atv = a.transpose() * v;
    if (std::abs(atv[s.axis]) < atv.norm() / 2.0 - 1e-9) ++pigeon_bad;
    if (!(s.contraction < 1.0)) ++wl2_bad;
    if (std::abs((v - s.p).dot(s.p)) >
        1e-9 * std::max(1.0, v.norm() * s.p.norm()))
      ++wl2_bad;
  }
  report(4, "WL1/WL2 suites: zero violations",
         wl1_bad == 0 && wl2_bad == 0 && pigeon_bad == 0,
         fmt("wl1=%d wl2=%d pigeonhole=%d violations", wl1_bad, wl2_bad,
             pigeon_bad));
}

// ---------------------------------------------------------------- criterion 5
// Tube positivity for identity and a perturbed field, straight and L-shaped
// tubes, eps=0.5, t0=1; monotone in eps on shared streams.
void criterion_5() {
  const Box region = Box::cube(2, 50.0);
  const MatrixField id = MatrixField::identity(2, region);
  const MatrixField pert = MatrixField::parse(
      2, {"1+0.1*sin(x2)", "0", "0", "1+0.1*cos(x1)"}, region);
  const StableParams params(1.0);
  PathScheme scheme;
  scheme.dt = 0.005;
  MCRunSpec run;
  run.n = 100000;
  run.seed = 105;

  Eigen::VectorXd a = Eigen::VectorXd::Zero(2), b(2), c(2);
  b << 1.0, 0.0;
  c << 1.0, 1.0;
  TubeSpec straight;
  straight.times = {0.0, 1.0};
  straight.vertices = {a, b};
  straight.eps = 0.5;
  straight.t0 = 1.0;
  TubeSpec ell;
  ell.times = {0.0, 0.5, 1.0};
  ell.vertices = {a, b, c};
  ell.eps = 0.5;
  ell.t0 = 1.0;

  bool ok = true;
  std::string note;
  for (const MatrixField* field : {&id, &pert}) {
    for (const TubeSpec* spec : {&straight, &ell}) {
      const auto ests = estimate_tube_probability(*field, *spec, {0.35, 0.5},
                                                  a, scheme, params, run);
      const double lo99 = ests[1].mean - kZ99 * ests[1].stderr_;
      if (!(lo99 > 0.0)) ok = false;
      if (!(ests[0].mean <= ests[1].mean)) ok = false;  // shared streams
      note += fmt("p=%.4f ", ests[1].mean);
    }
  }
  report(5, "tube probabilities positive, monotone in eps", ok, note);
}

// ---------------------------------------------------------------- criterion 6
// Uniform hitting: unit-cube container, side-0.1 center target, 5 probe
// starts in the inner half-cube, 99% CI positive at n=1e5.
void criterion_6() {
  const MatrixField id = MatrixField::identity(2, Box::cube(2, 10.0));
  const Domain container = Domain::cube(Eigen::VectorXd::Zero(2), 1.0);
  const Domain target = Domain::cube(Eigen::VectorXd::Zero(2), 0.1);
  const StableParams params(1.0);
  PathScheme scheme;
  scheme.dt = 0.005;
  MCRunSpec run;
  run.n = 100000;

  const double starts[5][2] = {
      {0.2, 0.2}, {-0.2, 0.2}, {-0.2, -0.2}, {0.2, -0.2}, {0.24, 0.0}};
  bool ok = true;
  std::string note;
  for (int s = 0; s < 5; ++s) {
    Eigen::VectorXd x0(2);
    x0 << starts[s][0], starts[s][1];
    run.seed = 106 + s;
    const auto res =
        estimate_hitting(id, target, container, x0, scheme, params, run);
    const double lo99 = res.probability.mean - kZ99 * res.probability.stderr_;
    if (!(lo99 > 0.0)) ok = false;
    note += fmt("%.4f ", res.probability.mean);
  }
  report(6, "hitting probability positive from all probe starts", ok, note);
}

// ---------------------------------------------------------------- criterion 7
// Harnack counterexample ratio growth, h0 scaling, exact slab exits.
void criterion_7() {
  const StableParams params(1.0);
  PathScheme scheme;
  scheme.mode = StepMode::JumpAdapted;
  scheme.truncation = TruncationScheme(0.5);
  scheme.dt = 0.02;
  MCRunSpec run;
  run.n = 1000000;
  run.seed = 107;
  const auto rows = ratio_curve({0.2, 0.1, 0.05}, params, scheme, run);

  bool increasing = true, exact_slab = true, scaling = true;
  double min_ratio_h0_eps = 1e300, max_ratio_h0_eps = 0.0;
  std::string note;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RatioRow& r = rows[i];
    if (r.numerator_pre_in_C != r.numerator_paths) exact_slab = false;
    const double h0_over_eps = r.h0 / std::pow(r.eps, params.alpha);
    min_ratio_h0_eps = std::min(min_ratio_h0_eps, h0_over_eps);
    max_ratio_h0_eps = std::max(max_ratio_h0_eps, h0_over_eps);
    if (i > 0) {
      const double gap = r.ratio - rows[i - 1].ratio;
      const double joint = std::sqrt(r.ratio_se * r.ratio_se +
                                     rows[i - 1].ratio_se * rows[i - 1].ratio_se);
      if (!(gap > 2.0 * joint)) increasing = false;
    }
    note += fmt("eps=%.2f ratio=%.1f ", r.eps, r.ratio);
  }
  if (max_ratio_h0_eps > 3.0 * min_ratio_h0_eps) scaling = false;
  report(7, "Harnack ratio blows up as eps -> 0",
         increasing && exact_slab && scaling,
         note + fmt("h0/eps in [%.3f, %.3f]", min_ratio_h0_eps,
                    max_ratio_h0_eps));
}

// ---------------------------------------------------------------- criterion 8
// Occupation-of-F_eps scaling: slope = alpha within 0.15, horizon-stable.
void criterion_8() {
  const StableParams params(1.0);
  MCRunSpec run;
  run.n = 20000;
  run.seed = 108;
  const auto res =
      occupation_scaling({1.0, 0.5, 0.25, 0.125}, params, 10.0, 0.01, run);
  const double dev = std::abs(res.slope - params.alpha);
  const double shift = std::abs(res.slope_double_horizon - res.slope);
  report(8, "occupation scaling slope matches alpha",
         dev < 0.15 && shift < 0.1 && !res.horizon_sensitive,
         fmt("slope=%.3f (se %.3f), horizon shift %.3f", res.slope,
             res.slope_se, shift));
}

// ---------------------------------------------------------------- criterion 9
// Hoelder fit: positive exponent with a good fit for a perturbed field, and
// exact recovery on synthetic power-law inputs.
void criterion_9() {
  const Box region = Box::cube(2, 50.0);
  const MatrixField pert = MatrixField::parse(
      2, {"1+0.1*sin(x2)", "0", "0", "1+0.1*cos(x1)"}, region);
  const Domain ball = Domain::ball(Eigen::VectorXd::Zero(2), 1.0);
  PathScheme scheme;
  scheme.dt = 0.01;
  MCRunSpec run;
  run.n = 20000;
  run.seed = 109;
  std::vector<Eigen::VectorXd> grid;
  for (int i = -8; i <= 8; ++i) {
    Eigen::VectorXd x(2);
    x << 0.05 * i, 0.0;
    grid.push_back(x);
  }
  const auto g = [](const Eigen::VectorXd& y) {
    return 0.5 * (1.0 + std::tanh(y[0]));
  };
  const auto est = estimate_harmonic(pert, ball, g, "tanh_x1", grid, scheme,
                                     StableParams(1.0), run);
  const auto fit = fit_hoelder(est, Eigen::VectorXd::Zero(2), 0.45);
  const bool mc_ok = fit.beta_hat > 0.0 && fit.r_squared > 0.8;

  // Synthetic exact powers: values |x|^beta with negligible noise.
  bool synth_ok = true;
  for (double beta : {1.0, 0.5}) {
    HarmonicEstimate synth;
    synth.grid = grid;
    for (const auto& x : grid) {
      MCEstimate v;
      v.mean = std::pow(x.norm(), beta);
      v.stderr_ = 1e-13;
      v.n = 1;
      synth.values.push_back(v);
    }
    const auto f = fit_hoelder(synth, Eigen::VectorXd::Zero(2), 0.45);
    if (std::abs(f.beta_hat - beta) > 1e-6) synth_ok = false;
  }
  report(9, "Hoelder exponent fit", mc_ok && synth_ok,
         fmt("beta_hat=%.3f r2=%.4f synthetic %s", fit.beta_hat,
             fit.r_squared, synth_ok ? "exact" : "off"));
}

// --------------------------------------------------------------- criterion 10
// Generator vs symbol on cosine probes for constant fields.
void criterion_10() {
  const Box region = Box::cube(2, 50.0);
  const MatrixField id = MatrixField::identity(2, region);
  const MatrixField cst =
      MatrixField::parse(2, {"1", "0.4", "-0.3", "1.2"}, region);
  RngStream rng(110, 0);
  double worst = 0.0;
  for (int probe = 0; probe < 20; ++probe) {
    const MatrixField& field = probe % 2 == 0 ? id : cst;
    const double alpha = probe % 3 == 0 ? 1.5 : (probe % 3 == 1 ? 1.0 : 0.8);
    Eigen::VectorXd u(2), x(2);
    for (int j = 0; j < 2; ++j) {
      u[j] = 2.0 * rng.uniform01() - 1.0;
      x[j] = 2.0 * rng.uniform01() - 1.0;
    }
    if (u.norm() < 0.1) u[0] += 0.5;
    const auto f = [&](const Eigen::VectorXd& y) {
      return std::cos(u.dot(y));
    };
    const auto res = apply_generator(field, f, x, StableParams(alpha));
    const double expected = -symbol(field, x, u, alpha) * std::cos(u.dot(x));
    worst = std::max(worst, std::abs(res.value - expected));
  }
  report(10, "generator/symbol consistency on cosines", worst < 1e-3,
         fmt("max residual %.2e (budget 1e-3)", worst));
}

// --------------------------------------------------------------- criterion 11
// CLI determinism: identical seed and config give bit-identical files.
void criterion_11() {
  const std::string bin = STABLE_SDE_BIN;
  const std::string dir = "/tmp/stable_sde_acceptance";
  std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
  const std::string cmd = bin +
                          " exit-time --alpha 1 --dim 2 --dt 0.01 --n 3000"
                          " --seed 11 --out " +
                          dir + " > /dev/null 2>&1";
  const auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  bool ok = std::system(cmd.c_str()) == 0;
  std::map<std::string, std::string> first;
  for (const char* name :
       {"exit_time.json", "exit_tail.csv", "exit_time.meta.json"}) {
    first[name] = slurp(dir + "/" + name);
    if (first[name].empty()) ok = false;
  }
  if (std::system(cmd.c_str()) != 0) ok = false;
  for (const auto& [name, text] : first)
    if (slurp(dir + "/" + name) != text) ok = false;
  report(11, "CLI rerun is bit-identical", ok, "");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
