#include "stablelike/stable.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace stablelike {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre 8-point nodes/weights on [-1,1].
constexpr double kGlx[8] = {-0.9602898564975362, -0.7966664774136267,
                            -0.5255324099163290, -0.1834346424956498,
                            0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975362};
constexpr double kGlw[8] = {0.1012285362903763, 0.2223810344533745,
                            0.3137066458778873, 0.3626837833783620,
                            0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

template <class F>
double gl8(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i) s += kGlw[i] * f(mid + half * kGlx[i]);
  return s * half;
}

// K(alpha) = integral over R of (1-cos h)|h|^{-1-alpha} dh, so c1 = 1/K.
double cos_mass(double alpha) {
  // [0, h0]: series expansion of 1-cos h, term by term.
  const double h0 = 1e-3;
  double total = std::pow(h0, 2.0 - alpha) / (2.0 * (2.0 - alpha)) -
                 std::pow(h0, 4.0 - alpha) / (24.0 * (4.0 - alpha)) +
                 std::pow(h0, 6.0 - alpha) / (720.0 * (6.0 - alpha));
  // [h0, 1]: geometric panels.
  const int n_inner = 64;
  const double ratio = std::pow(1.0 / h0, 1.0 / n_inner);
  double prev = h0;
  for (int i = 1; i <= n_inner; ++i) {
    const double b = (i == n_inner) ? 1.0 : prev * ratio;
    total += gl8([&](double h) { return (1.0 - std::cos(h)) *
                                        std::pow(h, -1.0 - alpha); },
                 prev, b);
    prev = b;
  }
  // [1, R]: resolve the oscillation with short panels.
  const double R = 200.0;
  const double dw = 0.25;
  for (double a = 1.0; a < R - 1e-12; a += dw) {
    const double b = std::min(a + dw, R);
    total += gl8([&](double h) { return (1.0 - std::cos(h)) *
                                        std::pow(h, -1.0 - alpha); },
                 a, b);
  }
  // Tail: integral of h^{-1-alpha} is exact; the cosine part is expanded by
  // parts twice, remainder O(R^{-3-alpha}).
  total += std::pow(R, -alpha) / alpha;
  total -= -std::sin(R) * std::pow(R, -1.0 - alpha) +
           (1.0 + alpha) * std::cos(R) * std::pow(R, -2.0 - alpha);
  return 2.0 * total;
}

}  // namespace

double levy_c1(double alpha) {
  static std::map<double, double> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(alpha);
  if (it != cache.end()) return it->second;
  const double c1 = 1.0 / cos_mass(alpha);
  cache.emplace(alpha, c1);
  return c1;
}

double sample_standard_stable(double alpha, RngStream& rng) {
  const double v = kPi * (rng.uniform01() - 0.5);
  // The alpha=1 transformation is used for alpha within 1e-6 of 1.
  if (std::abs(alpha - 1.0) < 1e-6) return std::tan(v);
  const double e = rng.exponential();
  const double t1 = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
  const double t2 =
      std::pow(std::cos((1.0 - alpha) * v) / e, (1.0 - alpha) / alpha);
  return t1 * t2;
}

double sample_increment(const StableParams& params, double dt,
                        RngStream& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("sample_increment: dt <= 0");
  return params.scale * std::pow(dt, 1.0 / params.alpha) *
         sample_standard_stable(params.alpha, rng);
}

double large_jump_rate(const StableParams& params, double beta) {
  const double c1 = levy_c1(params.alpha);
  return 2.0 * c1 * std::pow(params.scale, params.alpha) *
         std::pow(beta, -params.alpha) / params.alpha;
}

std::vector<JumpEvent> sample_large_jumps(const StableParams& params,
                                          const TruncationScheme& scheme,
                                          double horizon, RngStream& rng,
                                          int coordinate) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("sample_large_jumps: horizon <= 0");
  const double rate = large_jump_rate(params, scheme.beta);
  std::vector<JumpEvent> events;
  double t = 0.0;
  for (;;) {
    t += rng.exponential() / rate;
    if (t >= horizon) break;
    // |size| > beta follows the Pareto tail of the Levy density.
    const double mag =
        scheme.beta * std::pow(rng.uniform01(), -1.0 / params.alpha);
    const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    events.push_back({t, coordinate, sign * mag});
  }
  return events;
}

std::vector<JumpEvent> sample_large_jumps_all(const StableParams& params,
                                              const TruncationScheme& scheme,
                                              double horizon, int dim,
                                              RngStream& rng) {
  std::vector<JumpEvent> all;
  for (int k = 0; k < dim; ++k) {
    auto ev = sample_large_jumps(params, scheme, horizon, rng, k);
    all.insert(all.end(), ev.begin(), ev.end());
  }
  std::sort(all.begin(), all.end(),
            [](const JumpEvent& a, const JumpEvent& b) {
              return a.time < b.time;
            });
  return all;
}

double small_jump_variance(const StableParams& params,
                           const TruncationScheme& scheme, double t) {
  if (t < 0.0) throw std::invalid_argument("small_jump_variance: t < 0");
  const double c1 = levy_c1(params.alpha);
  return t * std::pow(params.scale, params.alpha) * 2.0 * c1 *
         std::pow(scheme.beta, 2.0 - params.alpha) / (2.0 - params.alpha);
}

double choose_beta(double t0, double delta, int dim,
                   const StableParams& params, double c4) {
  if (!(t0 > 0.0) || !(delta > 0.0) || dim < 1 || !(c4 > 0.0))
    throw std::invalid_argument("choose_beta: inputs must be positive");
  return std::pow(delta * delta / (2.0 * dim * c4 * t0),
                  1.0 / (2.0 - params.alpha));
}

}  // namespace stablelike
