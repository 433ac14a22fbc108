#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stablelike/config.hpp"
#include "stablelike/estimators.hpp"
#include "stablelike/harnack.hpp"
#include "stablelike/output.hpp"
#include "stablelike/stable.hpp"

namespace fs = std::filesystem;
using namespace stablelike;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string seed_str;  // accepted as string so "unset" is detectable
  RunConfig cfg;
  bool timing = false;

  // flag storage (applied over config values when the flag was given)
  double alpha = 0, scale = 0, dt = 0, beta = 0, t_cap = 0, region = 0;
  int dimension = 0, threads = 0;
  std::uint64_t n = 0, seed = 0;
  std::string mode, out_dir;
  std::vector<std::string> entries;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "config file (sectioned key=value)");
  sub->add_option("--seed", o.seed, "RNG seed (fallback: STABLE_SDE_SEED)");
  sub->add_option("--n", o.n, "number of Monte Carlo paths");
  sub->add_option("--threads", o.threads, "worker thread cap");
  sub->add_option("--alpha", o.alpha, "stability index in (0,2)");
  sub->add_option("--scale", o.scale, "driver scale");
  sub->add_option("--dim", o.dimension, "state dimension");
  sub->add_option("--entries", o.entries,
                  "matrix entries, row-major expressions in x1..xd");
  sub->add_option("--region", o.region, "field region cube half-width");
  sub->add_option("--mode", o.mode, "scheme mode: fixed | jump_adapted");
  sub->add_option("--dt", o.dt, "time step");
  sub->add_option("--beta", o.beta, "jump truncation level (jump_adapted)");
  sub->add_option("--t-cap", o.t_cap, "path time cap");
  sub->add_option("--out", o.out_dir, "output directory");
  sub->add_flag("--timing", o.timing,
                "include runtime_s in JSON output (breaks bit-identical reruns)");
}

// Precedence: flag > config file > STABLE_SDE_SEED (seed only) > default.
RunConfig resolve(CLI::App* sub, CommonOpts& o) {
  RunConfig cfg;
  if (sub->count("--config")) cfg = load_config(o.config_path);
  if (sub->count("--alpha")) cfg.alpha = o.alpha;
  if (sub->count("--scale")) cfg.scale = o.scale;
  if (sub->count("--dim")) cfg.dimension = o.dimension;
  if (sub->count("--entries")) cfg.entries = o.entries;
  if (sub->count("--region")) cfg.region = o.region;
  if (sub->count("--mode")) cfg.mode = o.mode;
  if (sub->count("--dt")) cfg.dt = o.dt;
  if (sub->count("--beta")) cfg.beta = o.beta;
  if (sub->count("--t-cap")) cfg.t_cap = o.t_cap;
  if (sub->count("--n")) cfg.n = o.n;
  if (sub->count("--threads")) cfg.threads = o.threads;
  if (sub->count("--out")) cfg.directory = o.out_dir;
  if (sub->count("--seed")) {
    cfg.seed = o.seed;
  } else if (!sub->count("--config")) {
    if (const char* env = std::getenv("STABLE_SDE_SEED"))
      cfg.seed = std::strtoull(env, nullptr, 10);
  }
  cfg.validate();
  return cfg;
}

MatrixField make_field(const RunConfig& cfg) {
  const Box region = Box::cube(cfg.dimension, cfg.region);
  if (cfg.entries.empty()) return MatrixField::identity(cfg.dimension, region);
  return MatrixField::parse(cfg.dimension, cfg.entries, region);
}

PathScheme make_scheme(const RunConfig& cfg) {
  PathScheme scheme;
  scheme.mode = cfg.mode == "jump_adapted" ? StepMode::JumpAdapted
                                           : StepMode::FixedStep;
  scheme.dt = cfg.dt;
  if (scheme.mode == StepMode::JumpAdapted)
    scheme.truncation = TruncationScheme(cfg.beta);
  scheme.max_steps = cfg.max_steps;
  return scheme;
}

MCRunSpec make_run(const RunConfig& cfg) {
  MCRunSpec run;
  run.n = cfg.n;
  run.seed = cfg.seed;
  run.threads = cfg.threads;
  run.t_cap = cfg.t_cap;
  return run;
}

ordered_json params_json(const RunConfig& cfg) {
  ordered_json p;
  p["alpha"] = cfg.alpha;
  p["scale"] = cfg.scale;
  p["dimension"] = cfg.dimension;
  p["mode"] = cfg.mode;
  p["dt"] = cfg.dt;
  p["config_hash"] = config_hash(cfg);
  return p;
}

struct Emitter {
  RunConfig cfg;
  bool timing;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  fs::path dir() const {
    fs::create_directories(cfg.directory);
    return cfg.directory;
  }

  void json(const std::string& name, ordered_json j) const {
    if (timing)
      j["runtime_s"] = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    write_json_file((dir() / name).string(), j);
  }

  void csv(const std::string& name, const CsvWriter& w) const {
    w.write((dir() / name).string());
  }

  void metadata(const std::string& name) const {
    write_json_file((dir() / name).string(), metadata_json(cfg));
  }
};

int severity(bool unreliable) { return unreliable ? 2 : 0; }

int cmd_sample(const RunConfig& cfg, const Emitter& em) {
  const StableParams params(cfg.alpha, cfg.scale);
  RngStream rng(cfg.seed, 0);
  Accumulator acc;
  CsvWriter csv("i,value");
  for (std::uint64_t i = 0; i < cfg.n; ++i) {
    const double v = sample_increment(params, cfg.dt, rng);
    acc.add(v);
    csv.add_row(std::to_string(i) + "," + csv_num(v));
  }
  em.csv("sample.csv", csv);
  em.json("sample.json",
          summary_json("sample", params_json(cfg), MCEstimate::from(acc, cfg.seed),
                       {}));
  em.metadata("sample.meta.json");
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const Emitter& em, double horizon,
                 std::uint64_t n_paths) {
  const StableParams params(cfg.alpha, cfg.scale);
  const MatrixField field = make_field(cfg);
  const PathScheme scheme = make_scheme(cfg);
  std::string header = "path_id,t";
  for (int j = 1; j <= cfg.dimension; ++j)
    header += ",x" + std::to_string(j);
  header += ",event";
  CsvWriter csv(header);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(cfg.dimension);
  bool surrogate = false;
  for (std::uint64_t p = 0; p < n_paths; ++p) {
    RngStream rng = make_stream(cfg.seed, 20, p);
    const PathSample path =
        simulate_path(field, x0, horizon, scheme, params, rng);
    surrogate = surrogate || path.gaussian_surrogate;
    std::size_t next_jump = 0;
    for (std::size_t i = 0; i < path.times.size(); ++i) {
      std::string row = std::to_string(p) + "," + csv_num(path.times[i]);
      for (int j = 0; j < cfg.dimension; ++j)
        row += "," + csv_num(path.states[i][j]);
      std::string event = "step";
      if (i > 0) {
        while (next_jump < path.jumps.size() &&
               path.jumps[next_jump].time < path.times[i] - 1e-15)
          ++next_jump;
        if (next_jump < path.jumps.size() &&
            std::abs(path.jumps[next_jump].time - path.times[i]) < 1e-15) {
          event = "jump:" + std::to_string(path.jumps[next_jump].coordinate);
          ++next_jump;
        }
      }
      csv.add_row(row + "," + event);
    }
  }
  em.csv("paths.csv", csv);
  ordered_json meta = metadata_json(cfg);
  meta["scheme"] = cfg.mode;
  meta["horizon"] = horizon;
  meta["paths"] = n_paths;
  meta["gaussian_surrogate"] = surrogate;
  write_json_file((em.dir() / "paths.meta.json").string(), meta);
  return 0;
}

int cmd_exit_time(const RunConfig& cfg, const Emitter& em, double radius,
                  bool refine) {
  const StableParams params(cfg.alpha, cfg.scale);
  const MatrixField field = make_field(cfg);
  const Domain domain =
      Domain::ball(Eigen::VectorXd::Zero(cfg.dimension), radius);
  const auto res = estimate_exit_moments(
      field, Eigen::VectorXd::Zero(cfg.dimension), domain, make_scheme(cfg),
      params, make_run(cfg), 5, refine);
  std::vector<std::string> flags;
  if (res.unreliable) flags.push_back("capped_paths");
  ordered_json j =
      summary_json("exit-time", params_json(cfg), res.mean_tau, flags);
  j["capped_fraction"] = res.capped_fraction;
  if (refine) {
    j["mean_half_dt"] = res.mean_tau_half_dt->mean;
    j["richardson_mean"] = res.richardson_mean;
  }
  em.json("exit_time.json", j);
  CsvWriter csv("m,p_tail");
  for (std::size_t m = 0; m < res.tail.size(); ++m)
    csv.add_row(std::to_string(m + 1) + "," + csv_num(res.tail[m]));
  em.csv("exit_tail.csv", csv);
  em.metadata("exit_time.meta.json");
  return severity(res.unreliable);
}

int cmd_occupation(const RunConfig& cfg, const Emitter& em, double radius,
                   double target_radius) {
  const StableParams params(cfg.alpha, cfg.scale);
  const MatrixField field = make_field(cfg);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(cfg.dimension);
  const auto res = estimate_occupation(
      field, Domain::ball(zero, radius), Domain::ball(zero, target_radius),
      zero, make_scheme(cfg), params, make_run(cfg));
  std::vector<std::string> flags;
  if (res.unreliable) flags.push_back("capped_paths");
  ordered_json j =
      summary_json("occupation", params_json(cfg), res.occupation, flags);
  j["mean_tau"] = res.mean_tau.mean;
  j["capped_fraction"] = res.capped_fraction;
  em.json("occupation.json", j);
  em.metadata("occupation.meta.json");
  return severity(res.unreliable);
}

int cmd_steering(const RunConfig& cfg, const Emitter& em, int axis, double r,
                 double gamma, double t0) {
  const StableParams params(cfg.alpha, cfg.scale);
  const MatrixField field = make_field(cfg);
  const auto est = estimate_single_jump_steering(
      field, Eigen::VectorXd::Zero(cfg.dimension), axis, r, gamma, t0, params,
      make_run(cfg));
  ordered_json p = params_json(cfg);
  p["axis"] = axis;
  p["r"] = r;
  p["gamma"] = gamma;
  p["t0"] = t0;
  em.json("steering.json", summary_json("steering", p, est, {}));
  em.metadata("steering.meta.json");
  return 0;
}

int cmd_tube(const RunConfig& cfg, const Emitter& em,
             const std::vector<double>& target, double eps, double t0) {
  const StableParams params(cfg.alpha, cfg.scale);
  const MatrixField field = make_field(cfg);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(cfg.dimension);
  TubeSpec spec;
  spec.times = {0.0, t0};
  Eigen::VectorXd tgt = zero;
  for (std::size_t i = 0; i < target.size() && i < static_cast<std::size_t>(cfg.dimension); ++i)
    tgt[i] = target[i];
  spec.vertices = {zero, tgt};
  spec.eps = eps;
  spec.t0 = t0;
  const auto est = estimate_tube_probability(field, spec, zero,
                                             make_scheme(cfg), params,
                                             make_run(cfg));
  ordered_json p = params_json(cfg);
  p["eps"] = eps;
  p["t0"] = t0;
  em.json("tube.json", summary_json("tube", p, est, {}));
  em.metadata("tube.meta.json");
  return 0;
}

int cmd_hitting(const RunConfig& cfg, const Emitter& em, double target_side,
                const std::vector<double>& start) {
  const StableParams params(cfg.alpha, cfg.scale);
  const MatrixField field = make_field(cfg);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(cfg.dimension);
  Eigen::VectorXd x0 = zero;
  for (std::size_t i = 0;
       i < start.size() && i < static_cast<std::size_t>(cfg.dimension); ++i)
    x0[i] = start[i];
  const auto res = estimate_hitting(
      field, Domain::cube(zero, target_side), Domain::cube(zero, 1.0), x0,
      make_scheme(cfg), params, make_run(cfg));
  ordered_json p = params_json(cfg);
  p["target_side"] = target_side;
  p["start"] = start;
  ordered_json j = summary_json("hitting", p, res.probability, {});
  j["capped_fraction"] = res.capped_fraction;
  em.json("hitting.json", j);
  em.metadata("hitting.meta.json");
  return 0;
}

HarmonicEstimate run_harmonic(const RunConfig& cfg, int grid_count) {
  const StableParams params(cfg.alpha, cfg.scale);
  const MatrixField field = make_field(cfg);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(cfg.dimension);
  std::vector<Eigen::VectorXd> grid;
  for (int i = 0; i < grid_count; ++i) {
    Eigen::VectorXd x = zero;
    x[0] = grid_count > 1 ? -0.5 + i * (1.0 / (grid_count - 1)) : 0.0;
    grid.push_back(x);
  }
  const auto g = [](const Eigen::VectorXd& y) {
    return 0.5 * (1.0 + std::tanh(y[0]));
  };
  return estimate_harmonic(field, Domain::ball(zero, 1.0), g, "tanh_x1", grid,
                           make_scheme(cfg), params, make_run(cfg));
}

int cmd_harmonic(const RunConfig& cfg, const Emitter& em, int grid_count) {
  const auto est = run_harmonic(cfg, grid_count);
  std::string header;
  for (int j = 1; j <= cfg.dimension; ++j)
    header += (j > 1 ? "," : "") + ("x" + std::to_string(j));
  CsvWriter csv(header + ",mean,stderr");
  for (std::size_t i = 0; i < est.grid.size(); ++i) {
    std::string row;
    for (int j = 0; j < cfg.dimension; ++j)
      row += (j ? "," : "") + csv_num(est.grid[i][j]);
    csv.add_row(row + "," + csv_num(est.values[i].mean) + "," +
                csv_num(est.values[i].stderr_));
  }
  em.csv("harmonic.csv", csv);
  std::vector<std::string> flags;
  if (est.unreliable) flags.push_back("capped_paths");
  ordered_json p = params_json(cfg);
  p["boundary"] = est.boundary_id;
  p["grid_count"] = grid_count;
  MCEstimate mid = est.values[est.values.size() / 2];
  ordered_json j = summary_json("harmonic", p, mid, flags);
  j["capped_fraction"] = est.capped_fraction;
  em.json("harmonic.json", j);
  em.metadata("harmonic.meta.json");
  return severity(est.unreliable);
}

int cmd_hoelder(const RunConfig& cfg, const Emitter& em, int grid_count,
                double radius) {
  const auto est = run_harmonic(cfg, grid_count);
  Eigen::VectorXd center = Eigen::VectorXd::Zero(cfg.dimension);
  const auto fit = fit_hoelder(est, center, radius);
  ordered_json p = params_json(cfg);
  p["grid_count"] = grid_count;
  p["radius"] = radius;
  ordered_json j;
  j["op"] = "hoelder";
  j["params"] = p;
  j["beta_hat"] = fit.beta_hat;
  j["c_hat"] = fit.c_hat;
  j["r_squared"] = fit.r_squared;
  j["pairs_used"] = fit.pairs_used;
  j["seed"] = cfg.seed;
  em.json("hoelder.json", j);
  em.metadata("hoelder.meta.json");
  return 0;
}

int cmd_harnack(const RunConfig& cfg, const Emitter& em,
                const std::vector<double>& eps_list) {
  const StableParams params(cfg.alpha, cfg.scale);
  PathScheme scheme = make_scheme(cfg);
  scheme.mode = StepMode::JumpAdapted;
  scheme.truncation = TruncationScheme(cfg.beta);
  const auto rows = ratio_curve(eps_list, params, scheme, make_run(cfg));
  CsvWriter csv("eps,h0,h0_se,hw0,hw0_se,ratio,ratio_se,n,seed");
  for (const auto& r : rows)
    csv.add_row(csv_num(r.eps) + "," + csv_num(r.h0) + "," + csv_num(r.h0_se) +
                "," + csv_num(r.hw0) + "," + csv_num(r.hw0_se) + "," +
                csv_num(r.ratio) + "," + csv_num(r.ratio_se) + "," +
                std::to_string(r.n) + "," + std::to_string(r.seed));
  em.csv("harnack.csv", csv);
  ordered_json j;
  j["op"] = "harnack";
  j["params"] = params_json(cfg);
  j["rows"] = rows.size();
  bool lower_bound = false;
  for (const auto& r : rows) lower_bound = lower_bound || r.lower_bound_flag;
  j["lower_bound_flag"] = lower_bound;
  j["seed"] = cfg.seed;
  em.json("harnack.json", j);
  em.metadata("harnack.meta.json");
  return 0;
}

int cmd_scaling_check(const RunConfig& cfg, const Emitter& em,
                      const std::vector<double>& eps_list, double horizon) {
  const StableParams params(cfg.alpha, cfg.scale);
  const auto res =
      occupation_scaling(eps_list, params, horizon, cfg.dt, make_run(cfg));
  CsvWriter csv("eps,occupation,stderr,occupation_2x_horizon");
  for (const auto& r : res.rows)
    csv.add_row(csv_num(r.eps) + "," + csv_num(r.estimate) + "," +
                csv_num(r.stderr_) + "," +
                csv_num(r.estimate_double_horizon));
  em.csv("scaling.csv", csv);
  ordered_json j;
  j["op"] = "scaling-check";
  j["params"] = params_json(cfg);
  j["slope"] = res.slope;
  j["slope_se"] = res.slope_se;
  j["slope_double_horizon"] = res.slope_double_horizon;
  j["horizon_sensitive"] = res.horizon_sensitive;
  j["seed"] = cfg.seed;
  em.json("scaling.json", j);
  em.metadata("scaling.meta.json");
  return res.horizon_sensitive ? 2 : 0;
}

int cmd_generator_check(const RunConfig& cfg, const Emitter& em,
                        int probe_count) {
  const StableParams params(cfg.alpha, cfg.scale);
  const MatrixField field = make_field(cfg);
  RngStream rng(cfg.seed, 31);
  double max_abs = 0.0;
  bool all_converged = true;
  CsvWriter csv("probe,residual,est_error,tail_bound");
  for (int p = 0; p < probe_count; ++p) {
    Eigen::VectorXd x(cfg.dimension), u(cfg.dimension);
    for (int j = 0; j < cfg.dimension; ++j) {
      x[j] = rng.uniform01() - 0.5;
      u[j] = 2.0 * rng.uniform01() - 1.0;
    }
    const auto f = [&](const Eigen::VectorXd& y) {
      return std::cos(u.dot(y));
    };
    const auto res = apply_generator(field, f, x, params);
    const double sym = symbol(field, x, u, params.alpha);
    const double residual = std::abs(res.value + sym * std::cos(u.dot(x)));
    max_abs = std::max(max_abs, residual);
    all_converged = all_converged && res.converged;
    csv.add_row(std::to_string(p) + "," + csv_num(residual) + "," +
                csv_num(res.est_error) + "," + csv_num(res.tail_bound));
  }
  em.csv("generator.csv", csv);
  ordered_json j;
  j["op"] = "generator-check";
  j["params"] = params_json(cfg);
  j["max_abs_residual"] = max_abs;
  j["probes"] = probe_count;
  j["converged"] = all_converged;
  j["seed"] = cfg.seed;
  em.json("generator.json", j);
  em.metadata("generator.meta.json");
  return all_converged ? 0 : 2;
}

int cmd_verify(const std::string& dir) {
  int checked = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() < 10 || name.substr(name.size() - 10) != ".meta.json")
      continue;
    std::ifstream in(entry.path());
    nlohmann::json meta = nlohmann::json::parse(in);
    const RunConfig cfg = parse_config(meta.at("config").get<std::string>());
    const std::uint64_t expect = meta.at("config_hash").get<std::uint64_t>();
    if (config_hash(cfg) != expect) {
      std::cerr << name << ": config hash mismatch\n";
      return 1;
    }
    ++checked;
  }
  std::cout << "verified " << checked << " metadata file(s)\n";
  return checked > 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable-like SDE simulation and estimation toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  double horizon = 1.0, radius = 1.0, target_radius = 0.5, r_jump = 0.5;
  double gamma = 0.25, t0 = 1.0, eps = 0.5, target_side = 0.1;
  double fit_radius = 0.5;
  std::uint64_t n_paths = 4;
  int axis = 0, grid_count = 9, probe_count = 20;
  bool refine = false;
  std::vector<double> target = {0.5};
  std::vector<double> start;
  std::vector<double> eps_list = {0.2, 0.1, 0.05};
  std::string verify_dir = "out";

  auto* sample = app.add_subcommand("sample", "raw driver increments");
  auto* simulate = app.add_subcommand("simulate", "dump simulated paths");
  simulate->add_option("--horizon", horizon, "simulation horizon");
  simulate->add_option("--paths", n_paths, "number of paths to dump");
  auto* exit_time = app.add_subcommand("exit-time", "mean exit time and tail");
  exit_time->add_option("--radius", radius, "domain ball radius");
  exit_time->add_flag("--refine", refine, "also run dt/2 and Richardson");
  auto* occupation =
      app.add_subcommand("occupation", "occupation time before exit");
  occupation->add_option("--radius", radius, "domain ball radius");
  occupation->add_option("--target-radius", target_radius,
                         "occupied set ball radius");
  auto* steering =
      app.add_subcommand("steering", "single-jump steering probability");
  steering->add_option("--axis", axis, "driver axis (0-based)");
  steering->add_option("--r", r_jump, "jump length");
  steering->add_option("--gamma", gamma, "confinement radius");
  steering->add_option("--t0", t0, "time window");
  auto* tube = app.add_subcommand("tube", "tube-staying probability");
  tube->add_option("--target", target, "tube endpoint coordinates")
      ->delimiter(',');
  tube->add_option("--eps", eps, "tube radius");
  tube->add_option("--t0", t0, "tube duration");
  auto* hitting = app.add_subcommand("hitting", "hit target before exit");
  hitting->add_option("--target-side", target_side, "target cube side");
  hitting->add_option("--start", start, "start coordinates")->delimiter(',');
  auto* harmonic = app.add_subcommand("harmonic", "harmonic MC profile");
  harmonic->add_option("--grid-count", grid_count, "grid points on the x1 axis");
  auto* hoelder = app.add_subcommand("hoelder", "Hoelder exponent fit");
  hoelder->add_option("--grid-count", grid_count, "grid points on the x1 axis");
  hoelder->add_option("--radius", fit_radius, "fit radius around the center");
  auto* harnack = app.add_subcommand("harnack", "Harnack ratio curve");
  harnack->add_option("--eps", eps_list, "decreasing eps list")
      ->delimiter(',');
  auto* scaling =
      app.add_subcommand("scaling-check", "occupation scaling slope");
  scaling->add_option("--eps", eps_list, "eps list")->delimiter(',');
  scaling->add_option("--horizon", horizon, "truncation horizon");
  auto* generator =
      app.add_subcommand("generator-check", "generator vs symbol residual");
  generator->add_option("--probes", probe_count, "probe count");
  auto* verify = app.add_subcommand("verify", "re-check metadata hashes");
  verify->add_option("--dir", verify_dir, "output directory to verify");

  for (auto* sub : {sample, simulate, exit_time, occupation, steering, tube,
                    hitting, harmonic, hoelder, harnack, scaling, generator})
    add_common(sub, o);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub == verify) return cmd_verify(verify_dir);
    const RunConfig cfg = resolve(sub, o);
    Emitter em{cfg, o.timing};
    if (sub == sample) return cmd_sample(cfg, em);
    if (sub == simulate) return cmd_simulate(cfg, em, horizon, n_paths);
    if (sub == exit_time) return cmd_exit_time(cfg, em, radius, refine);
    if (sub == occupation) return cmd_occupation(cfg, em, radius, target_radius);
    if (sub == steering) return cmd_steering(cfg, em, axis, r_jump, gamma, t0);
    if (sub == tube) return cmd_tube(cfg, em, target, eps, t0);
    if (sub == hitting) return cmd_hitting(cfg, em, target_side, start);
    if (sub == harmonic) return cmd_harmonic(cfg, em, grid_count);
    if (sub == hoelder) return cmd_hoelder(cfg, em, grid_count, fit_radius);
    if (sub == harnack) return cmd_harnack(cfg, em, eps_list);
    if (sub == scaling) return cmd_scaling_check(cfg, em, eps_list, horizon);
    if (sub == generator) return cmd_generator_check(cfg, em, probe_count);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
