#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ctrex/trex.hpp"
#include "ctrex/types.hpp"

namespace ctrex {

// Sparse complex linear regression: y = X beta + noise with X ~ CN(0, I),
// unit-modulus random-phase coefficients on a random support of size s, and
// noise variance s / snr so that per-sample signal power over noise power
// equals the (linear) snr.
struct RegressionScenario {
  std::size_t p = 1000;
  std::size_t n = 300;
  std::size_t s = 5;
  double snr = 1.0;  // linear
  std::uint64_t seed = 0;
  // Forces an exact noiseless instance when set (overrides snr).
  std::optional<double> sigma2_override;
};

struct RegressionInstance {
  CMatrix x;
  CVector y;
  std::vector<std::size_t> support;  // ascending
  CVector beta_support;              // coefficients, aligned with support
};

RegressionInstance gen_sparse_regression(const RegressionScenario& sc);

// Unit-norm steering vector of a half-wavelength uniform linear array:
// a(theta)_m = exp(i pi m sin(theta)) / sqrt(M).
CVector steering_vector(double theta_deg, std::size_t sensors);

// Steering matrix over the angular grid [-90, 90) at the given resolution;
// returns the matrix together with the grid angles in degrees.
std::pair<CMatrix, std::vector<double>> build_cbf_matrix(
    std::size_t sensors, double grid_resolution_deg);

// Single-snapshot source scene on the beamforming grid. Source angles must
// lie exactly on the grid; off-grid angles are rejected rather than snapped
// so exact-recovery accounting stays honest.
struct DoaScenario {
  std::size_t sensors = 80;
  double grid_resolution_deg = 1.0;
  std::vector<double> source_angles_deg;  // in [-90, 90)
  std::vector<double> source_powers;      // one per source, > 0
  double snr_db = 10.0;
  std::uint64_t seed = 0;
};

struct DoaInstance {
  CMatrix phi;  // sensors x grid-size steering matrix
  CVector y;    // single snapshot
  std::vector<std::size_t> support;  // grid indices, ascending
  CVector source_amplitudes;         // s-tilde, in input source order
  std::vector<double> grid_angles_deg;
};

DoaInstance gen_doa_snapshot(const DoaScenario& sc);

struct TrialMetrics {
  double fdp = 0.0;
  double tpr = 0.0;
  bool exact = false;  // selected set equals the true support
};

TrialMetrics trial_metrics(const std::vector<std::size_t>& selected,
                           const std::vector<std::size_t>& truth);

struct AggregateReport {
  std::size_t trials = 0;
  double mean_fdp = 0.0;  // empirical FDR
  double mean_tpr = 0.0;
  std::size_t exact_count = 0;
  double wall_ms = 0.0;  // measurement only; not part of the seeded content
};

// Runs `trials` independent selector trials with per-trial child seeds and
// aggregates the metrics. Statistics are deterministic per seed and thread
// count; wall_ms is the only field that varies between runs.
AggregateReport run_monte_carlo(const RegressionScenario& sc,
                                std::size_t trials, double alpha,
                                std::uint64_t seed, std::size_t threads);
AggregateReport run_monte_carlo(const DoaScenario& sc, std::size_t trials,
                                double alpha, std::uint64_t seed,
                                std::size_t threads);

}  // namespace ctrex
