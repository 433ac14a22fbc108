#include "stablelike/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace stablelike {

ordered_json summary_json(const std::string& op, const ordered_json& params,
                          const MCEstimate& est,
                          const std::vector<std::string>& flags) {
  ordered_json j;
  j["op"] = op;
  j["params"] = params;
  j["mean"] = est.mean;
  j["stderr"] = est.stderr_;
  j["ci95"] = {est.ci95_lo, est.ci95_hi};
  j["n"] = est.n;
  j["seed"] = est.seed;
  j["flags"] = flags;
  return j;
}

ordered_json metadata_json(const RunConfig& cfg) {
  ordered_json j;
  j["config"] = serialize_config(cfg);
  j["config_hash"] = config_hash(cfg);
  j["seed"] = cfg.seed;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_json_file(const std::string& path, const ordered_json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void CsvWriter::write(const std::string& path) const {
  std::string out = header + "\n";
  for (const auto& r : rows) out += r + "\n";
  write_text_file(path, out);
}

std::string csv_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace stablelike
