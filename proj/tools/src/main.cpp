#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

std::size_t parse_dummy_count(const std::string& text) {
  if (text == "auto") return 0;
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--l expects a count or 'auto'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ctrex: FDR-controlled variable selection for complex-valued "
      "high-dimensional linear models"};
  app.require_subcommand(1);

  ctrex::cli::SelectArgs select_args;
  std::string dummy_count = "auto";
  CLI::App* select = app.add_subcommand(
      "select", "Select variables from CSV data at a target FDR");
  select->add_option("--x", select_args.x_path, "Predictor table CSV")
      ->required();
  select->add_option("--y", select_args.y_path, "Response CSV (one column)")
      ->required();
  select->add_option("--alpha", select_args.alpha, "Target FDR in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  select->add_option("--k", select_args.k, "Number of random experiments");
  select->add_option("--l", dummy_count, "Dummies per experiment or 'auto'");
  select->add_option("--t-max", select_args.t_max,
                     "Dummy budget cap (0 = auto)");
  select
      ->add_option("--v-grid", select_args.v_grid,
                   "Voting grid, e.g. 0.5,0.55,...")
      ->delimiter(',');
  select->add_option("--seed", select_args.seed, "Master seed");
  select->add_option("--threads", select_args.threads, "Worker thread cap")
      ->envname("CTREX_THREADS");
  select->add_option("--out", select_args.out_path,
                     "Result JSON path (default stdout)");

  ctrex::cli::RegressionBenchArgs reg_args;
  CLI::App* reg = app.add_subcommand(
      "regression-bench",
      "Monte-Carlo benchmark on sparse complex linear regression");
  reg->add_option("--p", reg_args.p, "Number of predictors");
  reg->add_option("--n", reg_args.n, "Number of samples");
  reg->add_option("--s", reg_args.s, "True support size");
  reg->add_option("--snr", reg_args.snr, "Linear SNR grid")->delimiter(',');
  reg->add_option("--trials", reg_args.trials, "Monte-Carlo trials per SNR")
      ->check(CLI::PositiveNumber);
  reg->add_option("--alpha", reg_args.alpha, "Target FDR")
      ->check(CLI::Range(0.0, 1.0));
  reg->add_option("--seed", reg_args.seed, "Master seed");
  reg->add_option("--threads", reg_args.threads, "Worker thread cap")
      ->envname("CTREX_THREADS");
  reg->add_flag("--timing", reg_args.timing,
                "Record wall time in runtime_ms (breaks byte reproducibility)");
  reg->add_option("--out", reg_args.out_path,
                  "Output path (*.json for JSON, default CSV to stdout)");

  ctrex::cli::DoaBenchArgs doa_args;
  CLI::App* doa = app.add_subcommand(
      "doa-bench",
      "Monte-Carlo benchmark on single-snapshot DOA estimation");
  doa->add_option("--m", doa_args.sensors, "Sensor count");
  doa->add_option("--resolution", doa_args.resolution,
                  "Grid resolution in degrees");
  doa->add_option("--angles", doa_args.angles, "Source angles in degrees")
      ->delimiter(',');
  doa->add_option("--powers", doa_args.powers, "Source powers")
      ->delimiter(',');
  doa->add_option("--snr-db", doa_args.snr_db, "SNR grid in dB")
      ->delimiter(',');
  doa->add_option("--trials", doa_args.trials, "Monte-Carlo trials per SNR")
      ->check(CLI::PositiveNumber);
  doa->add_option("--alpha", doa_args.alpha, "Target FDR")
      ->check(CLI::Range(0.0, 1.0));
  doa->add_option("--seed", doa_args.seed, "Master seed");
  doa->add_option("--threads", doa_args.threads, "Worker thread cap")
      ->envname("CTREX_THREADS");
  doa->add_flag("--timing", doa_args.timing,
                "Record wall time in runtime_ms (breaks byte reproducibility)");
  doa->add_option("--out", doa_args.out_path,
                  "Output path (*.json for JSON, default CSV to stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (select->parsed()) {
    try {
      select_args.l = parse_dummy_count(dummy_count);
    } catch (const CLI::ValidationError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    return ctrex::cli::cmd_select(select_args);
  }
  if (reg->parsed()) return ctrex::cli::cmd_regression_bench(reg_args);
  if (doa->parsed()) return ctrex::cli::cmd_doa_bench(doa_args);
  return 2;
}
