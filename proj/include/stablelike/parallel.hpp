#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

namespace stablelike {

// Streaming mean/stderr accumulator. Merging is done block-by-block in index
// order, so results are bit-identical for any thread count.
struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }

  void merge(const Accumulator& other) {
    sum += other.sum;
    sum_sq += other.sum_sq;
    n += other.n;
  }

  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }

  double stddev() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var =
        (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }

  double stderr_of_mean() const {
    return n ? stddev() / std::sqrt(static_cast<double>(n)) : 0.0;
  }
};

inline int default_thread_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(block_index, lo, hi) over [0,n) split into fixed-size blocks.
// Blocks are claimed dynamically but identified by index, so per-block
// results can be reduced deterministically afterwards.
template <class Fn>
void for_each_block(std::uint64_t n, std::uint64_t block_size, int threads,
                    Fn&& fn) {
  if (block_size == 0) block_size = 1;
  const std::uint64_t n_blocks = (n + block_size - 1) / block_size;
  if (threads <= 1 || n_blocks <= 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b)
      fn(b, b * block_size, std::min(n, (b + 1) * block_size));
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      fn(b, b * block_size, std::min(n, (b + 1) * block_size));
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace stablelike
