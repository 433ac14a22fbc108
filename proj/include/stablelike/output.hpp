#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "stablelike/config.hpp"
#include "stablelike/estimators.hpp"

namespace stablelike {

using ordered_json = nlohmann::ordered_json;

// {op, params, mean, stderr, ci95, n, seed, flags[]}. runtime_s is filled by
// the caller only when timing output is requested; it is omitted by default so
// reruns are bit-identical.
ordered_json summary_json(const std::string& op, const ordered_json& params,
                          const MCEstimate& est,
                          const std::vector<std::string>& flags);

ordered_json metadata_json(const RunConfig& cfg);

void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const ordered_json& j);

struct CsvWriter {
  std::string header;
  std::vector<std::string> rows;

  explicit CsvWriter(std::string header_) : header(std::move(header_)) {}
  void add_row(const std::string& row) { rows.push_back(row); }
  void write(const std::string& path) const;
};

std::string csv_num(double x);  // shortest round-trip formatting

}  // namespace stablelike
