#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "ctrex/types.hpp"

namespace ctrex {

// Outcome of one random experiment at a given dummy budget: the variables
// that entered the path before the budget-th dummy, with the dummies
// themselves stripped out.
struct CandidateSet {
  std::vector<std::size_t> original_indices;  // ascending, no dummy indices
  // (column index, is_dummy) in selection order, up to and including the
  // terminating dummy.
  std::vector<std::pair<std::size_t, bool>> entrance_order;
  std::size_t terminal_t = 0;  // dummies actually entered (< budget if the
                               // path saturated first)
};

// Resumable state of the complex terminating least-angle-regression path on
// one augmented design [X dummies]. A state is owned by a single thread;
// distinct experiments run in parallel with no shared mutable data.
class LarsState {
 public:
  // Requires zero-mean-free usage: columns of xtilde unit-norm (comparable
  // correlation scale) and y preprocessed by the caller.
  LarsState(CMatrix xtilde, CVector y, std::vector<std::size_t> dummy_indices);

  const CVector& beta() const noexcept { return beta_; }
  const CVector& residual() const noexcept { return residual_; }
  // Active set in selection order.
  const std::vector<std::size_t>& active() const noexcept { return active_; }
  bool is_dummy(std::size_t j) const { return dummy_mask_[j] != 0; }
  std::size_t dummy_count() const noexcept { return t_; }
  std::size_t iteration() const noexcept { return tau_; }

  std::size_t num_rows() const noexcept { return x_->rows(); }
  std::size_t num_columns() const noexcept { return x_->cols(); }
  const CMatrix& design() const noexcept { return *x_; }
  const CVector& response() const noexcept { return *y_; }

  // Path length hit min(n, p + L); no further entries are possible.
  bool saturated() const noexcept {
    return active_.size() >= std::min(x_->rows(), x_->cols());
  }
  // Residual carries no correlation signal (full fit reached); treated like
  // saturation: the candidate set is frozen for any larger budget.
  bool exhausted() const noexcept { return exhausted_; }
  bool done() const noexcept { return saturated() || exhausted(); }

 private:
  friend bool ctlars_step(LarsState& state);

  std::shared_ptr<const CMatrix> x_;
  std::shared_ptr<const CVector> y_;
  std::vector<char> dummy_mask_;  // per column
  std::vector<char> in_active_;
  // Columns numerically dependent on the active set; once dependent, always
  // dependent, so they are skipped for the rest of the path.
  std::vector<char> blocked_;
  std::vector<std::size_t> active_;
  CVector beta_;      // user coordinates, support subset of active_
  CVector residual_;
  // Lower triangle of the raw active Gram, grown one column per entry:
  // gram_cols_[b][a] = <x_active[a], x_active[b]> for a <= b.
  std::vector<CVector> gram_cols_;
  std::size_t t_ = 0;    // dummies entered so far
  std::size_t tau_ = 0;  // iterations taken
  double y_norm_ = 0.0;
  bool exhausted_ = false;
};

LarsState ctlars_init(const CMatrix& xtilde, const CVector& y,
                      std::vector<std::size_t> dummy_indices);

// One least-angle iteration: appends the most correlated eligible inactive
// column, moves along the equiangular direction until the next catch-up
// point, and updates coefficients and residual. Candidates that would make
// the active Gram lose positive definiteness are skipped permanently, the
// way classical LARS handles exact collinearity and rank exhaustion.
// Returns false (and flags the state exhausted) when no correlation signal
// or eligible candidate remains. Throws SingularActiveSet only if the
// already-accepted active set itself stops being factorizable.
bool ctlars_step(LarsState& state);

// Smallest positive catch-up step: the gamma at which some inactive column's
// correlation modulus |c_j - gamma g_j| meets the shrinking active level
// cmax - gamma l_a, capped at the full-fit step cmax / l_a.
double compute_step_size(std::span<const cplx> c, std::span<const cplx> g,
                         double cmax, double l_a,
                         std::span<const std::size_t> inactive);

// Extends the path until `budget` dummies have entered (or the path ends)
// and reports the candidate set at that budget. Re-invoking with budget + 1
// continues the same path; the concatenated path is identical to a single
// run at the larger budget.
CandidateSet ctlars_run(LarsState& state, std::size_t budget);

// Candidate set read off the already-computed path, for any budget.
CandidateSet candidate_set_at(const LarsState& state, std::size_t budget);

}  // namespace ctrex
