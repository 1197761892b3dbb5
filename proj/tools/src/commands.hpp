#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ctrex::cli {

struct SelectArgs {
  std::string x_path;
  std::string y_path;
  std::string out_path;  // empty = stdout
  double alpha = 0.1;
  std::size_t k = 20;
  std::size_t l = 0;  // 0 = auto (match p)
  std::size_t t_max = 0;
  std::vector<double> v_grid;  // empty = default
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

struct RegressionBenchArgs {
  std::size_t p = 1000;
  std::size_t n = 300;
  std::size_t s = 5;
  std::vector<double> snr = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
  std::size_t trials = 100;
  double alpha = 0.1;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  bool timing = false;  // keep runtime_ms at 0 unless asked, so output
                        // files stay byte-reproducible
  std::string out_path;  // empty = stdout; *.json selects the JSON emitter
};

struct DoaBenchArgs {
  std::size_t sensors = 80;
  double resolution = 1.0;
  std::vector<double> angles = {35.0, 40.0, 45.0};
  std::vector<double> powers = {1.0, 1.0, 1.0};
  std::vector<double> snr_db = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0};
  std::size_t trials = 100;
  double alpha = 0.1;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  bool timing = false;
  std::string out_path;
};

// Each command returns the process exit code: 0 on success, 2 on input or
// configuration errors (diagnostic names the file/column), 1 on internal
// numerical failure.
int cmd_select(const SelectArgs& args);
int cmd_regression_bench(const RegressionBenchArgs& args);
int cmd_doa_bench(const DoaBenchArgs& args);

}  // namespace ctrex::cli
