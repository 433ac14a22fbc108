#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stablelike {

// Resolved run configuration. File format is a minimal sectioned key-value
// text (a TOML subset): [section] headers, key = value lines, '#' comments,
// quoted strings, numbers, and flat arrays. Unknown sections or keys are
// rejected.
struct RunConfig {
  // [model]
  int dimension = 1;
  double alpha = 1.0;
  double scale = 1.0;
  std::vector<std::string> entries;  // row-major d*d; empty = identity
  double region = 10.0;              // cube half-width for the field region

  // [scheme]
  std::string mode = "fixed";  // "fixed" | "jump_adapted"
  double dt = 0.01;
  double beta = 0.5;  // truncation level in jump-adapted mode
  double t_cap = 50.0;
  std::uint64_t max_steps = 20000000;

  // [run]
  std::uint64_t seed = 0;
  std::uint64_t n = 10000;
  int threads = 1;

  // [output]
  std::string directory = "out";
  std::vector<std::string> formats = {"json", "csv"};

  void validate() const;  // throws std::invalid_argument
};

// Throws std::runtime_error with a line number on malformed input or
// unknown section/key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical form: fixed section and key order, shortest round-trip number
// formatting. parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& cfg);

// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const RunConfig& cfg);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace stablelike
