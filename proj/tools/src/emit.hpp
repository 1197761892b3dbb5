#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ctrex/trex.hpp"

namespace ctrex::cli {

using json = nlohmann::json;

// One benchmark result row; snr carries the linear value for regression runs
// and the dB value for DOA runs.
struct BenchRow {
  double snr = 0.0;
  std::size_t trials = 0;
  double fdr = 0.0;
  double tpr = 0.0;
  std::size_t exact = 0;
  double runtime_ms = 0.0;
};

json config_to_json(const TRexConfig& config);

// The select result document: selected indices in input column order, the
// calibrated thresholds, and the per-variable occurrences at (T*, L),
// alongside the fully resolved configuration.
json select_result_to_json(const SelectionResult& result,
                           const json& extra_config);

// Long-format benchmark table, one row per SNR level. The CSV variant embeds
// the configuration as a single '# config ...' comment line above the
// header `snr,trials,fdr,tpr,exact,runtime_ms`.
std::string bench_to_csv(const json& config, const std::vector<BenchRow>& rows);
json bench_to_json(const json& config, const std::vector<BenchRow>& rows);

// Inverse of bench_to_csv, for consumers that want the config back.
std::pair<json, std::vector<BenchRow>> parse_bench_csv(
    const std::string& text);

}  // namespace ctrex::cli
