#include "ctrex/linalg.hpp"

#include <cmath>
#include <string>

namespace ctrex {

double norm2(std::span<const cplx> v) {
  double acc = 0.0;
  for (const cplx& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b) {
  cplx acc{0.0, 0.0};
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

CVector adjoint_times(const CMatrix& m, std::span<const cplx> v) {
  if (v.size() != m.rows()) {
    throw DimensionMismatch("adjoint_times: vector length != matrix rows");
  }
  CVector out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    out[j] = dot_conj(m.col(j), v);
  }
  return out;
}

CVector center(const CVector& y) {
  cplx mean{0.0, 0.0};
  for (const cplx& z : y) mean += z;
  mean /= static_cast<double>(y.size());
  CVector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - mean;
  return out;
}

CMatrix standardize_columns(const CMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  const double n = static_cast<double>(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto src = m.col(j);
    auto dst = out.col(j);
    cplx mean{0.0, 0.0};
    double raw_norm_sq = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
      mean += src[i];
      raw_norm_sq += std::norm(src[i]);
    }
    mean /= n;
    double centered_norm_sq = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
      dst[i] = src[i] - mean;
      centered_norm_sq += std::norm(dst[i]);
    }
    const double norm = std::sqrt(centered_norm_sq);
    // Exactly-constant columns center to 0; numerically-constant ones leave
    // only rounding residue proportional to the raw column scale.
    if (norm <= 1e-13 * std::max(1.0, std::sqrt(raw_norm_sq))) {
      throw ConstantColumn(j, "standardize_columns: column " +
                                  std::to_string(j) + " is constant");
    }
    const double inv = 1.0 / norm;
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] *= inv;
  }
  return out;
}

CMatrix hermitian_solve(const CMatrix& g, const CMatrix& b) {
  const std::size_t n = g.rows();
  if (g.cols() != n) {
    throw DimensionMismatch("hermitian_solve: matrix is not square");
  }
  if (b.rows() != n) {
    throw DimensionMismatch("hermitian_solve: right-hand side rows != dim");
  }

  double scale = 0.0;
  double trace = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    trace += g(j, j).real();
    for (std::size_t i = 0; i < n; ++i) {
      scale = std::max(scale, std::abs(g(i, j)));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      if (std::abs(g(i, j) - std::conj(g(j, i))) >
          1e-10 * std::max(1.0, scale)) {
        throw DimensionMismatch("hermitian_solve: matrix is not Hermitian");
      }
    }
  }

  const double pivot_floor = 1e-12 * trace / static_cast<double>(n);

  // Lower-triangular Cholesky factor, built in place on a copy.
  CMatrix l = g;
  for (std::size_t j = 0; j < n; ++j) {
    double diag = l(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (!(diag > pivot_floor)) {
      throw NotPositiveDefinite(
          "hermitian_solve: pivot " + std::to_string(diag) + " at column " +
          std::to_string(j) + " is not positive");
    }
    const double djj = std::sqrt(diag);
    l(j, j) = {djj, 0.0};
    const double inv = 1.0 / djj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx acc = l(i, j);
      for (std::size_t k = 0; k < j; ++k) {
        acc -= l(i, k) * std::conj(l(j, k));
      }
      l(i, j) = acc * inv;
    }
  }

  // L z = b, then L^H x = z, per right-hand side.
  CMatrix x = b;
  for (std::size_t rhs = 0; rhs < b.cols(); ++rhs) {
    auto xc = x.col(rhs);
    for (std::size_t i = 0; i < n; ++i) {
      cplx acc = xc[i];
      for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * xc[k];
      xc[i] = acc / l(i, i).real();
    }
    for (std::size_t ii = n; ii-- > 0;) {
      cplx acc = xc[ii];
      for (std::size_t k = ii + 1; k < n; ++k) {
        acc -= std::conj(l(k, ii)) * xc[k];
      }
      xc[ii] = acc / l(ii, ii).real();
    }
  }
  return x;
}

CVector sample_complex_gaussian(Rng& rng, std::size_t n) {
  if (n == 0) {
    throw DimensionMismatch("sample_complex_gaussian: n must be >= 1");
  }
  CVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = rng.complex_gaussian();
  return out;
}

}  // namespace ctrex
