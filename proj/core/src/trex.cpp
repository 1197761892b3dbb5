#include "ctrex/trex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "ctrex/errors.hpp"
#include "ctrex/linalg.hpp"
#include "ctrex/parallel.hpp"
#include "ctrex/rng.hpp"

namespace ctrex {

TRexConfig resolve_config(TRexConfig config, std::size_t n, std::size_t p) {
  if (config.num_experiments <= 1) {
    throw std::invalid_argument("ct-rex: needs more than one experiment");
  }
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw std::invalid_argument("ct-rex: alpha must lie in [0, 1]");
  }
  if (config.num_dummies == 0) config.num_dummies = p;
  if (config.t_max == 0) {
    config.t_max = std::min(config.num_dummies, (n + 1) / 2);
  }
  config.t_max = std::max<std::size_t>(1, std::min(config.t_max,
                                                   config.num_dummies));
  if (config.v_grid.empty()) {
    // 0.50, 0.55, ..., 0.95 plus 1 - 1/(2K), so unanimity stays selectable.
    for (int i = 50; i <= 95; i += 5) {
      config.v_grid.push_back(static_cast<double>(i) / 100.0);
    }
    const double top =
        1.0 - 1.0 / (2.0 * static_cast<double>(config.num_experiments));
    if (top > config.v_grid.back()) config.v_grid.push_back(top);
  }
  double prev = 0.0;
  for (double v : config.v_grid) {
    if (!(v >= 0.5 && v < 1.0) || v <= prev) {
      throw std::invalid_argument(
          "ct-rex: v_grid must be strictly increasing within [0.5, 1)");
    }
    prev = v;
  }
  return config;
}

CMatrix generate_dummy_matrix(std::uint64_t master_seed, std::size_t k,
                              std::size_t n, std::size_t num_dummies) {
  if (num_dummies < 1) {
    throw std::invalid_argument("generate_dummy_matrix: needs >= 1 dummy");
  }
  Rng rng = Rng::child(master_seed, k);
  CMatrix dummies(n, num_dummies);
  for (std::size_t j = 0; j < num_dummies; ++j) {
    auto col = dummies.col(j);
    for (std::size_t i = 0; i < n; ++i) col[i] = rng.complex_gaussian();
  }
  return dummies;
}

CandidateSet run_experiment(const CMatrix& x, const CVector& y,
                            std::uint64_t master_seed, std::size_t k,
                            std::size_t num_dummies, std::size_t budget,
                            std::optional<LarsState>& cache) {
  if (!cache) {
    CMatrix dummies =
        generate_dummy_matrix(master_seed, k, x.rows(), num_dummies);
    // Dummies are standardized in distribution already, but the path needs
    // the property to hold exactly, not in expectation.
    CMatrix xtilde = CMatrix::concat_cols(x, standardize_columns(dummies));
    std::vector<std::size_t> dummy_idx(num_dummies);
    std::iota(dummy_idx.begin(), dummy_idx.end(), x.cols());
    cache.emplace(ctlars_init(xtilde, y, std::move(dummy_idx)));
  }
  return ctlars_run(*cache, budget);
}

std::vector<double> relative_occurrences(
    const std::vector<CandidateSet>& candidates, std::size_t budget,
    std::size_t num_variables) {
  std::vector<double> phi(num_variables, 0.0);
  if (budget == 0 || candidates.empty()) return phi;
  for (const CandidateSet& cand : candidates) {
    for (std::size_t j : cand.original_indices) {
      phi.at(j) += 1.0;
    }
  }
  const double inv_k = 1.0 / static_cast<double>(candidates.size());
  for (double& value : phi) value *= inv_k;
  return phi;
}

std::vector<std::size_t> active_set_from(const std::vector<double>& phi,
                                         double v) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    if (phi[j] > v) out.push_back(j);
  }
  return out;
}

namespace {

// Smallest vote count m with m/K strictly above v, robust to the fact that
// both v and the occurrences are ratios of small integers.
std::size_t min_winning_votes(double v, std::size_t k) {
  const double vk = v * static_cast<double>(k);
  const double rounded = std::round(vk);
  const double base =
      (std::abs(vk - rounded) < 1e-9) ? rounded : std::floor(vk);
  return static_cast<std::size_t>(base) + 1;
}

double log_choose(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// P(at most t-1 of the l dummy quantiles exceed u): the chance that a null
// variable whose own correlation quantile is u enters one experiment before
// its t-th dummy. Equals the Beta(l+1-t, t) order-statistic CDF at u.
double dummy_front_cdf(double u, std::size_t t, std::size_t l) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double log_u = std::log(u);
  const double log_1mu = std::log1p(-u);
  double max_log = -std::numeric_limits<double>::infinity();
  std::vector<double> logs(t);
  for (std::size_t i = 0; i < t; ++i) {
    logs[i] = log_choose(l, i) + static_cast<double>(i) * log_1mu +
              static_cast<double>(l - i) * log_u;
    max_log = std::max(max_log, logs[i]);
  }
  if (!std::isfinite(max_log)) return 0.0;
  double acc = 0.0;
  for (double value : logs) acc += std::exp(value - max_log);
  return std::min(1.0, std::exp(max_log) * acc);
}

// P(Bin(k, w) >= m), summed in log space.
double binomial_tail(std::size_t k, double w, std::size_t m) {
  if (m == 0) return 1.0;
  if (m > k) return 0.0;
  if (w <= 0.0) return 0.0;
  if (w >= 1.0) return 1.0;
  const double log_w = std::log(w);
  const double log_1mw = std::log1p(-w);
  double acc = 0.0;
  for (std::size_t j = m; j <= k; ++j) {
    acc += std::exp(log_choose(k, j) + static_cast<double>(j) * log_w +
                    static_cast<double>(k - j) * log_1mw);
  }
  return std::min(1.0, acc);
}

// P(a null variable is voted into the selected set at vote threshold m and
// budget t): its quantile u is fixed by the data while each of the K
// experiments redraws the dummy front, so the vote count is Bin(K, q_u) with
// q_u = dummy_front_cdf(u, t, l), integrated over u ~ U(0, 1). The integrand
// only moves inside a narrow window around the order-statistic mean; outside
// it is 0 below and 1 above, which the closed tail term accounts for.
double null_selection_probability(std::size_t m, std::size_t t, std::size_t l,
                                  std::size_t k) {
  const double lp1 = static_cast<double>(l) + 1.0;
  const double td = static_cast<double>(t);
  const double mean = 1.0 - td / lp1;
  const double sd =
      std::sqrt(td * (lp1 - td) / (lp1 * lp1 * (lp1 + 1.0)));
  const double u_lo = std::max(0.0, mean - 16.0 * sd);
  const double u_hi = std::min(1.0, mean + 16.0 * sd);

  constexpr std::size_t kIntervals = 2048;  // even, for composite Simpson
  const double h = (u_hi - u_lo) / static_cast<double>(kIntervals);
  auto f = [&](double u) {
    return binomial_tail(k, dummy_front_cdf(u, t, l), m);
  };
  double acc = f(u_lo) + f(u_hi);
  for (std::size_t i = 1; i < kIntervals; ++i) {
    const double u = u_lo + h * static_cast<double>(i);
    acc += f(u) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  const double integral = acc * h / 3.0;
  return std::min(1.0, (1.0 - u_hi) + integral);
}

// The integral above depends only on (l, k, t, m); cache it across calls,
// trials, and threads.
double cached_null_selection_probability(std::size_t m, std::size_t t,
                                         std::size_t l, std::size_t k) {
  struct Key {
    std::size_t m, t, l, k;
    bool operator<(const Key& o) const {
      return std::tie(m, t, l, k) < std::tie(o.m, o.t, o.l, o.k);
    }
  };
  static std::map<Key, double> cache;
  static std::mutex mutex;
  const Key key{m, t, l, k};
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double value = null_selection_probability(m, t, l, k);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, value);
  return value;
}

}  // namespace

double estimate_fdp(const OccurrenceTable& occ, double v, std::size_t budget,
                    std::size_t num_dummies) {
  if (!(v >= 0.5 && v < 1.0)) {
    throw std::invalid_argument("estimate_fdp: v must lie in [0.5, 1)");
  }
  if (budget < 1 || budget > occ.max_budget()) {
    throw std::invalid_argument("estimate_fdp: budget outside table range");
  }
  const std::size_t k = occ.num_experiments;
  const std::size_t p = occ.num_variables;
  const std::size_t m_min = min_winning_votes(v, k);

  // Vote counts are exact small integers; recover them from the ratios once
  // per budget, then evaluate the raw estimate on every (budget', votes)
  // cell at or beyond (budget, m_min). Taking the envelope maximum makes the
  // estimate monotone in the budget and in the voting level by construction
  // while staying conservative.
  double worst = 0.0;
  for (std::size_t t = 1; t <= budget; ++t) {
    const std::vector<double>& phi = occ.at(t);
    std::vector<std::size_t> votes_histogram(k + 1, 0);
    for (double value : phi) {
      const auto votes = static_cast<std::size_t>(
          std::llround(value * static_cast<double>(k)));
      ++votes_histogram[std::min(votes, k)];
    }
    // Conservative inflation of the expected null count, growing as the
    // budget eats into the dummy pool.
    const double inflation =
        (static_cast<double>(num_dummies) + 1.0) /
        (static_cast<double>(num_dummies) + 1.0 -
         static_cast<double>(std::min(t, num_dummies)));
    std::size_t selected = 0;
    for (std::size_t m = k + 1; m-- > m_min;) {
      selected += votes_histogram[m];
      if (selected == 0) continue;  // empty selections estimate to zero
      const double expected_false =
          inflation * static_cast<double>(p) *
          cached_null_selection_probability(m, t, num_dummies, k);
      // One-sigma Poisson upper confidence on the false count, so a small
      // expected count cannot certify a small selected set by itself.
      const double false_hits = expected_false + std::sqrt(expected_false);
      worst = std::max(worst,
                       std::min(1.0, false_hits / static_cast<double>(selected)));
    }
  }
  return worst;
}

SelectionResult calibrate_and_select(const CMatrix& x, const CVector& y,
                                     const TRexConfig& requested) {
  if (x.rows() != y.size()) {
    throw DimensionMismatch("ct-rex: rows(X) != length(y)");
  }
  if (x.rows() < 2) {
    throw DimensionMismatch("ct-rex: needs at least two samples");
  }
  if (x.cols() < 1) {
    throw DimensionMismatch("ct-rex: needs at least one predictor");
  }
  const TRexConfig config = resolve_config(requested, x.rows(), x.cols());
  const std::size_t k_experiments = config.num_experiments;
  const std::size_t p = x.cols();

  std::vector<std::optional<LarsState>> caches(k_experiments);
  std::vector<CandidateSet> candidates(k_experiments);
  OccurrenceTable occ;
  occ.num_experiments = k_experiments;
  occ.num_variables = p;

  struct GridPoint {
    double v;
    std::size_t budget;
    std::size_t count;
    double fdp;
  };
  std::vector<GridPoint> feasible;

  for (std::size_t budget = 1; budget <= config.t_max; ++budget) {
    parallel_for_index(k_experiments, config.threads, [&](std::size_t k) {
      candidates[k] = run_experiment(x, y, config.master_seed, k,
                                     config.num_dummies, budget, caches[k]);
    });
    occ.phi.push_back(relative_occurrences(candidates, budget, p));

    double min_fdp = std::numeric_limits<double>::infinity();
    for (double v : config.v_grid) {
      const double fdp = estimate_fdp(occ, v, budget, config.num_dummies);
      min_fdp = std::min(min_fdp, fdp);
      if (fdp <= config.alpha) {
        feasible.push_back(
            {v, budget, active_set_from(occ.phi.back(), v).size(), fdp});
      }
    }
    // Estimates only grow with the budget, so once every voting level is
    // over target there is nothing left to gain.
    if (min_fdp > config.alpha) break;

    bool all_paths_done = true;
    for (const auto& cache : caches) {
      if (!cache || !cache->done()) {
        all_paths_done = false;
        break;
      }
    }
    if (all_paths_done) break;  // occurrences are frozen from here on
  }

  const GridPoint* best = nullptr;
  for (const GridPoint& point : feasible) {
    if (point.count == 0) continue;
    const bool wins =
        !best || point.count > best->count ||
        (point.count == best->count &&
         (point.v > best->v || (point.v == best->v && point.budget < best->budget)));
    if (wins) best = &point;
  }

  SelectionResult result;
  result.occurrences = std::move(occ);
  result.config = config;
  if (best == nullptr) {
    // Nothing selectable within the FDR target; report the empty set. The
    // sentinel voting level 1.0 keeps the set/threshold relation exact,
    // since no occurrence can strictly exceed it.
    result.active_set.clear();
    result.v_star = 1.0;
    result.t_star = 1;
    result.fdp_hat = 0.0;
  } else {
    result.v_star = best->v;
    result.t_star = best->budget;
    result.fdp_hat = best->fdp;
    result.active_set =
        active_set_from(result.occurrences.at(best->budget), best->v);
  }
  return result;
}

SelectionResult select(const CMatrix& x_raw, const CVector& y_raw,
                       double alpha, TRexConfig overrides) {
  if (x_raw.rows() != y_raw.size()) {
    throw DimensionMismatch("select: rows(X) = " +
                            std::to_string(x_raw.rows()) + " but length(y) = " +
                            std::to_string(y_raw.size()));
  }
  overrides.alpha = alpha;
  const CMatrix x = standardize_columns(x_raw);
  const CVector y = center(y_raw);
  return calibrate_and_select(x, y, overrides);
}

}  // namespace ctrex
