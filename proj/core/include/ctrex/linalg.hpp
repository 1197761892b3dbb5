#pragma once

#include <span>

#include "ctrex/rng.hpp"
#include "ctrex/types.hpp"

namespace ctrex {

// Complex signum: c/|c| for c != 0, exactly 0 for c == 0. A zero correlation
// never enters the active set, so the zero case only exists for totality.
inline cplx csign(cplx c) {
  if (c.real() == 0.0 && c.imag() == 0.0) return {0.0, 0.0};
  return c / std::abs(c);
}

double norm2(std::span<const cplx> v);

// a^H b
cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b);

// M^H v for column-major M; the workhorse correlation kernel.
CVector adjoint_times(const CMatrix& m, std::span<const cplx> v);

// y - mean(y) * 1
CVector center(const CVector& y);

// Zero-mean, unit-Euclidean-norm columns. This is the usual LARS scaling: it
// gives the Gram matrix a unit diagonal so correlation magnitudes compare
// across columns. Throws ConstantColumn when a column has no variation.
CMatrix standardize_columns(const CMatrix& m);

// Solves G X = B for Hermitian positive definite G via a Cholesky
// factorization (never an explicit inverse). Throws NotPositiveDefinite when
// a pivot falls at or below 1e-12 * trace(G)/dim, the signature of a
// collinear active set.
CMatrix hermitian_solve(const CMatrix& g, const CMatrix& b);

// n i.i.d. draws from the circularly symmetric standard complex normal.
CVector sample_complex_gaussian(Rng& rng, std::size_t n);

}  // namespace ctrex
