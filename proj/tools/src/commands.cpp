#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>

#include "csv.hpp"
#include "emit.hpp"

#include "ctrex/errors.hpp"
#include "ctrex/rng.hpp"
#include "ctrex/simbench.hpp"
#include "ctrex/trex.hpp"

namespace ctrex::cli {

namespace {

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const CsvError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConstantColumn& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidGrid& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const OffGridSource& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  }
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CsvError(out_path + ": cannot open file for writing");
  out << text;
}

void emit_bench(const std::string& out_path, const json& config,
                const std::vector<BenchRow>& rows) {
  if (out_path.size() >= 5 &&
      out_path.compare(out_path.size() - 5, 5, ".json") == 0) {
    write_text(out_path, bench_to_json(config, rows).dump(2) + "\n");
  } else {
    write_text(out_path, bench_to_csv(config, rows));
  }
}

}  // namespace

int cmd_select(const SelectArgs& args) {
  return guarded([&]() {
    const ComplexTable x_table = read_complex_table(args.x_path);
    const ComplexTable y_table = read_complex_table(args.y_path);
    if (y_table.values.cols() != 1) {
      throw DimensionMismatch(args.y_path + ": response file must hold "
                              "exactly one complex column, found " +
                              std::to_string(y_table.values.cols()));
    }
    CVector y(y_table.values.rows());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = y_table.values(i, 0);
    if (x_table.values.rows() != y.size()) {
      throw DimensionMismatch(args.x_path + " has " +
                              std::to_string(x_table.values.rows()) +
                              " rows but " + args.y_path + " has " +
                              std::to_string(y.size()));
    }

    TRexConfig config;
    config.num_experiments = args.k;
    config.num_dummies = args.l;
    config.t_max = args.t_max;
    config.v_grid = args.v_grid;
    config.master_seed = args.seed;
    config.threads = args.threads;

    const SelectionResult result =
        select(x_table.values, y, args.alpha, config);

    const json doc = select_result_to_json(
        result, json{{"x", args.x_path}, {"y", args.y_path}});
    write_text(args.out_path, doc.dump(2) + "\n");
    std::cerr << "selected " << result.active_set.size() << " of "
              << x_table.values.cols() << " variables (v*="
              << result.v_star << ", T*=" << result.t_star << ", fdp_hat="
              << result.fdp_hat << ")\n";
    return 0;
  });
}

int cmd_regression_bench(const RegressionBenchArgs& args) {
  return guarded([&]() {
    if (args.trials < 1) {
      throw std::invalid_argument("regression-bench: trials must be >= 1");
    }
    if (args.snr.empty()) {
      throw std::invalid_argument("regression-bench: empty SNR set");
    }
    if (!(args.alpha >= 0.0 && args.alpha <= 1.0)) {
      throw std::invalid_argument("regression-bench: alpha must lie in [0,1]");
    }

    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < args.snr.size(); ++i) {
      RegressionScenario scenario;
      scenario.p = args.p;
      scenario.n = args.n;
      scenario.s = args.s;
      scenario.snr = args.snr[i];
      const AggregateReport report =
          run_monte_carlo(scenario, args.trials, args.alpha,
                          Rng::derive_seed(args.seed, i), args.threads);
      rows.push_back({args.snr[i], report.trials, report.mean_fdp,
                      report.mean_tpr, report.exact_count,
                      args.timing ? report.wall_ms : 0.0});
      std::cerr << "snr " << args.snr[i] << ": fdr=" << report.mean_fdp
                << " tpr=" << report.mean_tpr << " exact="
                << report.exact_count << "/" << report.trials << " ("
                << report.wall_ms << " ms)\n";
    }

    json config = {{"command", "regression-bench"}, {"p", args.p},
                   {"n", args.n},       {"s", args.s},
                   {"snr", args.snr},   {"trials", args.trials},
                   {"alpha", args.alpha}, {"seed", args.seed},
                   {"timing", args.timing}};
    emit_bench(args.out_path, config, rows);
    return 0;
  });
}

int cmd_doa_bench(const DoaBenchArgs& args) {
  return guarded([&]() {
    if (args.trials < 1) {
      throw std::invalid_argument("doa-bench: trials must be >= 1");
    }
    if (args.snr_db.empty()) {
      throw std::invalid_argument("doa-bench: empty SNR set");
    }
    if (args.angles.size() != args.powers.size()) {
      throw std::invalid_argument(
          "doa-bench: --angles and --powers must pair up");
    }
    if (!(args.alpha >= 0.0 && args.alpha <= 1.0)) {
      throw std::invalid_argument("doa-bench: alpha must lie in [0,1]");
    }

    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < args.snr_db.size(); ++i) {
      DoaScenario scenario;
      scenario.sensors = args.sensors;
      scenario.grid_resolution_deg = args.resolution;
      scenario.source_angles_deg = args.angles;
      scenario.source_powers = args.powers;
      scenario.snr_db = args.snr_db[i];
      const AggregateReport report =
          run_monte_carlo(scenario, args.trials, args.alpha,
                          Rng::derive_seed(args.seed, i), args.threads);
      rows.push_back({args.snr_db[i], report.trials, report.mean_fdp,
                      report.mean_tpr, report.exact_count,
                      args.timing ? report.wall_ms : 0.0});
      std::cerr << "snr " << args.snr_db[i] << " dB: fdr=" << report.mean_fdp
                << " tpr=" << report.mean_tpr << " exact="
                << report.exact_count << "/" << report.trials << " ("
                << report.wall_ms << " ms)\n";
    }

    json config = {{"command", "doa-bench"},
                   {"m", args.sensors},
                   {"resolution", args.resolution},
                   {"angles", args.angles},
                   {"powers", args.powers},
                   {"snr_db", args.snr_db},
                   {"trials", args.trials},
                   {"alpha", args.alpha},
                   {"seed", args.seed},
                   {"timing", args.timing}};
    emit_bench(args.out_path, config, rows);
    return 0;
  });
}

}  // namespace ctrex::cli
