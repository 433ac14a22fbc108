#pragma once

#include <cmath>
#include <cstdint>

namespace stablelike {

// Counter-based random stream. Output i of stream (seed, id) depends only on
// (seed, id, i), so any path's stream can be reconstructed independently of
// scheduling or thread count.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : base_(mix(seed, stream_id)), counter_(0) {}

  std::uint64_t next_u64() {
    ++counter_;
    return scramble(base_ + counter_ * kGamma);
  }

  // Uniform on the open interval (0,1).
  double uniform01() {
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the spare value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double exponential() { return -std::log(uniform01()); }

  // Standard Cauchy (location 0, scale 1).
  double cauchy() { return std::tan(kPi * (uniform01() - 0.5)); }

  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream_id) {
    return scramble(scramble(seed + kGamma) ^
                    (stream_id * 0xD6E8FEB86659FD93ULL));
  }

  std::uint64_t base_;
  std::uint64_t counter_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace stablelike
