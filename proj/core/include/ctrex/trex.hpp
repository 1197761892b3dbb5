#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctrex/tlars.hpp"
#include "ctrex/types.hpp"

namespace ctrex {

// Knobs of the selector. Zero-valued counts mean "derive the default from
// the data" and are materialized by resolve_config; the resolved copy is
// embedded in every SelectionResult so runs can be reproduced exactly.
struct TRexConfig {
  std::size_t num_experiments = 20;  // K, must be > 1
  std::size_t num_dummies = 0;       // L per experiment; 0 = match p
  double alpha = 0.1;                // target FDR in [0, 1]
  std::size_t t_max = 0;             // dummy budget cap; 0 = min(L, ceil(n/2))
  std::vector<double> v_grid;        // voting thresholds in [0.5, 1), increasing
  std::uint64_t master_seed = 0;
  std::size_t threads = 0;           // 0 = hardware concurrency
};

// Relative occurrence of each variable across the K experiments, one row per
// dummy budget. Budget 0 is implicitly all-zero.
struct OccurrenceTable {
  std::size_t num_experiments = 0;  // K
  std::size_t num_variables = 0;    // p
  std::vector<std::vector<double>> phi;  // phi[T-1][j], length p

  const std::vector<double>& at(std::size_t budget) const {
    return phi.at(budget - 1);
  }
  std::size_t max_budget() const noexcept { return phi.size(); }
};

struct SelectionResult {
  std::vector<std::size_t> active_set;  // ascending variable indices
  double v_star = 1.0;                  // 1.0 marks the empty-selection fallback
  std::size_t t_star = 1;
  double fdp_hat = 0.0;
  OccurrenceTable occurrences;
  TRexConfig config;  // fully resolved
};

// Validates invariants and fills in data-dependent defaults.
TRexConfig resolve_config(TRexConfig config, std::size_t n, std::size_t p);

// n x L matrix of i.i.d. circularly symmetric standard complex normal
// entries, deterministic per (master_seed, k).
CMatrix generate_dummy_matrix(std::uint64_t master_seed, std::size_t k,
                              std::size_t n, std::size_t num_dummies);

// One random experiment: appends the k-th dummy matrix to x (standardized),
// runs the terminating path to `budget` dummies, and strips the dummies from
// the result. `cache` holds the resumable path state across growing budgets;
// pass the same slot back to extend instead of recompute.
CandidateSet run_experiment(const CMatrix& x, const CVector& y,
                            std::uint64_t master_seed, std::size_t k,
                            std::size_t num_dummies, std::size_t budget,
                            std::optional<LarsState>& cache);

// Fraction of experiments whose candidate set contains each variable;
// all-zero when budget == 0.
std::vector<double> relative_occurrences(
    const std::vector<CandidateSet>& candidates, std::size_t budget,
    std::size_t num_variables);

// Variables with occurrence strictly above the voting level.
std::vector<std::size_t> active_set_from(const std::vector<double>& phi,
                                         double v);

// Conservative estimate of the false discovery proportion of the set
// selected at voting level v and dummy budget `budget`. Monotonically
// non-decreasing in the budget at fixed v, non-increasing in v at fixed
// budget, and 0 whenever the selected set is empty.
double estimate_fdp(const OccurrenceTable& occ, double v, std::size_t budget,
                    std::size_t num_dummies);

// The calibration loop: grows the dummy budget, extends all K experiments by
// warm restart, fuses occurrences, and returns the (v*, T*) selection that
// maximizes the selected count subject to the estimated FDP staying within
// alpha. Ties prefer the larger voting level, then the smaller budget.
// Expects x column-scaled to unit norm and y preprocessed by the caller.
SelectionResult calibrate_and_select(const CMatrix& x, const CVector& y,
                                     const TRexConfig& config);

// Turn-key entry point: standardizes X, centers y, applies defaults, and
// delegates to calibrate_and_select.
SelectionResult select(const CMatrix& x_raw, const CVector& y_raw,
                       double alpha, TRexConfig overrides = {});

}  // namespace ctrex
