#include "emit.hpp"

#include <sstream>

#include "csv.hpp"

namespace ctrex::cli {

// Thread count is deliberately absent: results are thread-count-invariant
// and output files must stay byte-identical across worker configurations.
json config_to_json(const TRexConfig& config) {
  return json{{"k", config.num_experiments},
              {"l", config.num_dummies},
              {"alpha", config.alpha},
              {"t_max", config.t_max},
              {"v_grid", config.v_grid},
              {"seed", config.master_seed}};
}

json select_result_to_json(const SelectionResult& result,
                           const json& extra_config) {
  json config = config_to_json(result.config);
  for (const auto& [key, value] : extra_config.items()) config[key] = value;
  return json{{"config", config},
              {"selected", result.active_set},
              {"v_star", result.v_star},
              {"T_star", result.t_star},
              {"fdp_hat", result.fdp_hat},
              {"phi", result.occurrences.at(result.t_star)}};
}

std::string bench_to_csv(const json& config,
                         const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "# config " << config.dump() << '\n';
  out << "snr,trials,fdr,tpr,exact,runtime_ms\n";
  for (const BenchRow& row : rows) {
    out << format_double(row.snr) << ',' << row.trials << ','
        << format_double(row.fdr) << ',' << format_double(row.tpr) << ','
        << row.exact << ',' << format_double(row.runtime_ms) << '\n';
  }
  return out.str();
}

json bench_to_json(const json& config, const std::vector<BenchRow>& rows) {
  json out;
  out["config"] = config;
  out["rows"] = json::array();
  for (const BenchRow& row : rows) {
    out["rows"].push_back(json{{"snr", row.snr},
                               {"trials", row.trials},
                               {"fdr", row.fdr},
                               {"tpr", row.tpr},
                               {"exact", row.exact},
                               {"runtime_ms", row.runtime_ms}});
  }
  return out;
}

std::pair<json, std::vector<BenchRow>> parse_bench_csv(
    const std::string& text) {
  std::istringstream in(text);
  std::string line;
  json config;
  std::vector<BenchRow> rows;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# config ", 0) == 0) {
      config = json::parse(line.substr(9));
      continue;
    }
    if (!saw_header) {
      saw_header = true;  // column header line
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    BenchRow row;
    std::getline(cells, cell, ',');
    row.snr = std::stod(cell);
    std::getline(cells, cell, ',');
    row.trials = std::stoull(cell);
    std::getline(cells, cell, ',');
    row.fdr = std::stod(cell);
    std::getline(cells, cell, ',');
    row.tpr = std::stod(cell);
    std::getline(cells, cell, ',');
    row.exact = std::stoull(cell);
    std::getline(cells, cell, ',');
    row.runtime_ms = std::stod(cell);
    rows.push_back(row);
  }
  return {config, rows};
}

}  // namespace ctrex::cli
