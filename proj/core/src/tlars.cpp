#include "ctrex/tlars.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ctrex/errors.hpp"
#include "ctrex/linalg.hpp"

namespace ctrex {

namespace {
// Relative floor below which the residual is considered fully explained.
constexpr double kExhaustedRel = 1e-12;
// Leading quadratic coefficients below this are treated as linear equations.
constexpr double kDegenerateQuad = 1e-14;
}  // namespace

LarsState::LarsState(CMatrix xtilde, CVector y,
                     std::vector<std::size_t> dummy_indices) {
  if (xtilde.rows() != y.size()) {
    throw DimensionMismatch("ctlars_init: rows(X) = " +
                            std::to_string(xtilde.rows()) +
                            " but length(y) = " + std::to_string(y.size()));
  }
  if (y.empty()) throw DimensionMismatch("ctlars_init: empty response");
  dummy_mask_.assign(xtilde.cols(), 0);
  for (std::size_t j : dummy_indices) {
    if (j >= xtilde.cols()) {
      throw DimensionMismatch("ctlars_init: dummy index out of range");
    }
    dummy_mask_[j] = 1;
  }
  in_active_.assign(xtilde.cols(), 0);
  blocked_.assign(xtilde.cols(), 0);
  beta_.assign(xtilde.cols(), cplx{0.0, 0.0});
  residual_ = y;
  y_norm_ = norm2(residual_);
  x_ = std::make_shared<const CMatrix>(std::move(xtilde));
  y_ = std::make_shared<const CVector>(std::move(y));
}

LarsState ctlars_init(const CMatrix& xtilde, const CVector& y,
                      std::vector<std::size_t> dummy_indices) {
  return LarsState(xtilde, y, std::move(dummy_indices));
}

double compute_step_size(std::span<const cplx> c, std::span<const cplx> g,
                         double cmax, double l_a,
                         std::span<const std::size_t> inactive) {
  if (!(cmax > 0.0) || !(l_a > 0.0)) {
    throw std::invalid_argument("compute_step_size: cmax and l_a must be > 0");
  }
  const double gamma_max = cmax / l_a;
  double best = gamma_max;
  auto consider = [&best](double gamma) {
    if (gamma > 0.0 && gamma < best) best = gamma;
  };
  for (std::size_t j : inactive) {
    // |c_j - gamma g_j|^2 = (cmax - gamma l_a)^2, as a real quadratic
    // a gamma^2 - 2 b gamma + q = 0.
    const double a = std::norm(g[j]) - l_a * l_a;
    const double b = std::real(std::conj(c[j]) * g[j]) - cmax * l_a;
    const double q = std::norm(c[j]) - cmax * cmax;
    if (std::abs(a) < kDegenerateQuad) {
      if (b != 0.0) consider(q / (2.0 * b));
      continue;
    }
    const double disc = b * b - a * q;
    if (disc < 0.0) continue;
    const double sd = std::sqrt(disc);
    consider((b - sd) / a);
    consider((b + sd) / a);
  }
  return best;
}

bool ctlars_step(LarsState& s) {
  if (s.done()) {
    throw std::logic_error("ctlars_step: path is complete");
  }
  const CMatrix& x = *s.x_;
  const std::size_t cols = x.cols();

  const CVector c = adjoint_times(x, s.residual_);

  double cmax_all = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    cmax_all = std::max(cmax_all, std::abs(c[j]));
  }
  if (cmax_all <= kExhaustedRel * s.y_norm_) {
    s.exhausted_ = true;
    return false;
  }

  std::size_t jstar = cols;
  CVector cand_col;
  CVector signs;
  CMatrix z;
  double cmax = 0.0;
  std::size_t m = 0;

  while (true) {
    // Most correlated eligible predictor; lowest index wins ties.
    jstar = cols;
    double jstar_abs = -1.0;
    for (std::size_t j = 0; j < cols; ++j) {
      if (s.in_active_[j] || s.blocked_[j]) continue;
      const double a = std::abs(c[j]);
      if (a > jstar_abs) {
        jstar_abs = a;
        jstar = j;
      }
    }
    if (jstar == cols) {
      // Every remaining column depends on the active set (rank exhausted).
      s.exhausted_ = true;
      return false;
    }

    m = s.active_.size() + 1;
    cand_col.assign(m, cplx{0.0, 0.0});
    for (std::size_t a = 0; a + 1 < m; ++a) {
      cand_col[a] = dot_conj(x.col(s.active_[a]), x.col(jstar));
    }
    cand_col[m - 1] = dot_conj(x.col(jstar), x.col(jstar));

    // Signum alignment: rotate each active column so its correlation with
    // the residual is real positive; the rotation is undone when the
    // coefficients are written back in user coordinates.
    signs.assign(m, cplx{0.0, 0.0});
    cmax = 0.0;
    for (std::size_t a = 0; a + 1 < m; ++a) {
      const cplx ca = c[s.active_[a]];
      signs[a] = csign(ca);
      cmax = std::max(cmax, std::abs(ca));
    }
    signs[m - 1] = csign(c[jstar]);
    cmax = std::max(cmax, std::abs(c[jstar]));

    CMatrix gram(m, m);
    for (std::size_t bcol = 0; bcol + 1 < m; ++bcol) {
      for (std::size_t a = 0; a <= bcol; ++a) {
        const cplx raw = s.gram_cols_[bcol][a];  // <x_a, x_b>
        const cplx aligned = std::conj(signs[a]) * signs[bcol] * raw;
        gram(a, bcol) = aligned;
        gram(bcol, a) = std::conj(aligned);
      }
    }
    for (std::size_t a = 0; a < m; ++a) {
      const cplx aligned = std::conj(signs[a]) * signs[m - 1] * cand_col[a];
      gram(a, m - 1) = aligned;
      gram(m - 1, a) = std::conj(aligned);
    }

    CMatrix ones(m, 1);
    for (std::size_t a = 0; a < m; ++a) ones(a, 0) = {1.0, 0.0};
    try {
      z = hermitian_solve(gram, ones);
      break;
    } catch (const NotPositiveDefinite&) {
      if (m == 1) {
        throw SingularActiveSet(
            "ctlars_step: column " + std::to_string(jstar) +
            " has no usable scale");
      }
      // The candidate is numerically in the span of the active set. Make
      // sure the accepted set itself is still sound, then retire the
      // candidate for the rest of the path.
      CMatrix accepted(m - 1, m - 1);
      for (std::size_t bcol = 0; bcol + 1 < m; ++bcol) {
        for (std::size_t a = 0; a <= bcol; ++a) {
          const cplx aligned =
              std::conj(signs[a]) * signs[bcol] * s.gram_cols_[bcol][a];
          accepted(a, bcol) = aligned;
          accepted(bcol, a) = std::conj(aligned);
        }
      }
      CMatrix ones_accepted(m - 1, 1);
      for (std::size_t a = 0; a + 1 < m; ++a) {
        ones_accepted(a, 0) = {1.0, 0.0};
      }
      try {
        hermitian_solve(accepted, ones_accepted);
      } catch (const NotPositiveDefinite& inner) {
        throw SingularActiveSet(
            "ctlars_step: accepted active set became collinear (" +
            std::string(inner.what()) + ")");
      }
      s.blocked_[jstar] = 1;
    }
  }

  // Commit the entrant.
  s.gram_cols_.push_back(std::move(cand_col));
  s.active_.push_back(jstar);
  s.in_active_[jstar] = 1;
  if (s.dummy_mask_[jstar]) ++s.t_;

  // 1^T G^{-1} 1 is real and positive for a Hermitian PD Gram.
  double sum_real = 0.0;
  for (std::size_t a = 0; a < m; ++a) sum_real += z(a, 0).real();
  if (!(sum_real > 0.0)) {
    throw SingularActiveSet("ctlars_step: degenerate equiangular system");
  }
  const double l_a = 1.0 / std::sqrt(sum_real);

  // w in aligned coordinates; u = X_A w is the unit equiangular direction.
  CVector w(m);
  for (std::size_t a = 0; a < m; ++a) w[a] = l_a * z(a, 0);
  CVector u(x.rows(), cplx{0.0, 0.0});
  for (std::size_t a = 0; a < m; ++a) {
    const cplx coef = signs[a] * w[a];
    const auto xa = x.col(s.active_[a]);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += coef * xa[i];
  }
  const CVector g = adjoint_times(x, u);

  std::vector<std::size_t> inactive;
  inactive.reserve(cols - m);
  for (std::size_t j = 0; j < cols; ++j) {
    if (!s.in_active_[j] && !s.blocked_[j]) inactive.push_back(j);
  }
  const double gamma = compute_step_size(c, g, cmax, l_a, inactive);

  for (std::size_t a = 0; a < m; ++a) {
    s.beta_[s.active_[a]] += gamma * signs[a] * w[a];
  }
  for (std::size_t i = 0; i < s.residual_.size(); ++i) {
    s.residual_[i] -= gamma * u[i];
  }
  ++s.tau_;
  return true;
}

CandidateSet candidate_set_at(const LarsState& s, std::size_t budget) {
  CandidateSet out;
  std::size_t dummies_seen = 0;
  for (std::size_t idx : s.active()) {
    const bool dummy = s.is_dummy(idx);
    out.entrance_order.emplace_back(idx, dummy);
    if (dummy) {
      if (++dummies_seen == budget) break;
    } else {
      out.original_indices.push_back(idx);
    }
  }
  out.terminal_t = dummies_seen;
  std::sort(out.original_indices.begin(), out.original_indices.end());
  return out;
}

CandidateSet ctlars_run(LarsState& state, std::size_t budget) {
  if (budget < 1) {
    throw std::invalid_argument("ctlars_run: budget must be >= 1");
  }
  while (!state.done() && state.dummy_count() < budget) {
    if (!ctlars_step(state)) break;
  }
  return candidate_set_at(state, budget);
}

}  // namespace ctrex
