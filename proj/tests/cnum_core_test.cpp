#include <cmath>
#include <complex>

#include <doctest.h>

#include "ctrex/errors.hpp"
#include "ctrex/linalg.hpp"
#include "ctrex/rng.hpp"
#include "ctrex/types.hpp"

using namespace ctrex;

namespace {

CMatrix random_complex_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  CMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = rng.complex_gaussian();
  }
  return m;
}

CMatrix random_hermitian_pd(Rng& rng, std::size_t dim) {
  // B^H B + I is Hermitian positive definite.
  const CMatrix b = random_complex_matrix(rng, dim + 4, dim);
  CMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      g(i, j) = dot_conj(b.col(i), b.col(j));
    }
    g(i, i) += 1.0;
  }
  return g;
}

}  // namespace

TEST_CASE("complex gaussian sampling moments") {
  Rng rng(99);
  const CVector z = sample_complex_gaussian(rng, 100000);
  cplx mean{0, 0};
  cplx pseudo{0, 0};
  double power = 0.0;
  for (const cplx& v : z) {
    mean += v;
    pseudo += v * v;
    power += std::norm(v);
  }
  mean /= static_cast<double>(z.size());
  pseudo /= static_cast<double>(z.size());
  power /= static_cast<double>(z.size());
  CHECK(power > 0.98);
  CHECK(power < 1.02);
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(pseudo) < 0.02);  // circularity: E[z^2] = 0
}

TEST_CASE("rng determinism and child streams") {
  Rng a(1234);
  Rng b(1234);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c1 = Rng::child(42, 1);
  Rng c2 = Rng::child(42, 2);
  CHECK(c1.next_u64() != c2.next_u64());

  Rng g1(7);
  Rng g2(7);
  for (int i = 0; i < 100; ++i) {
    CHECK(g1.complex_gaussian() == g2.complex_gaussian());
  }

  CHECK_THROWS_AS(sample_complex_gaussian(g1, 0), DimensionMismatch);
}

TEST_CASE("standardize_columns hand example") {
  CMatrix m(2, 1);
  m(0, 0) = {1.0, 0.0};
  m(1, 0) = {-1.0, 0.0};
  const CMatrix s = standardize_columns(m);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s(0, 0) - cplx{inv_sqrt2, 0.0}) < 1e-15);
  CHECK(std::abs(s(1, 0) - cplx{-inv_sqrt2, 0.0}) < 1e-15);
}

TEST_CASE("standardize_columns is idempotent on its fixed points") {
  Rng rng(5);
  const CMatrix m = random_complex_matrix(rng, 30, 6);
  const CMatrix once = standardize_columns(m);
  const CMatrix twice = standardize_columns(once);
  for (std::size_t j = 0; j < once.cols(); ++j) {
    for (std::size_t i = 0; i < once.rows(); ++i) {
      CHECK(std::abs(once(i, j) - twice(i, j)) < 1e-12);
    }
  }
}

TEST_CASE("standardize_columns output has zero mean and unit norm") {
  Rng rng(6);
  CMatrix m = random_complex_matrix(rng, 50, 8);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, 3) += cplx{4.0, -2.5};
  const CMatrix s = standardize_columns(m);
  for (std::size_t j = 0; j < s.cols(); ++j) {
    cplx mean{0, 0};
    for (std::size_t i = 0; i < s.rows(); ++i) mean += s(i, j);
    mean /= static_cast<double>(s.rows());
    CHECK(std::abs(mean) < 1e-12);
    CHECK(std::abs(norm2(s.col(j)) - 1.0) < 1e-12);
  }
}

TEST_CASE("standardize_columns rejects constant columns") {
  CMatrix m(2, 1);
  m(0, 0) = {3.0, 4.0};
  m(1, 0) = {3.0, 4.0};
  CHECK_THROWS_AS(standardize_columns(m), ConstantColumn);
  try {
    standardize_columns(m);
  } catch (const ConstantColumn& e) {
    CHECK(e.column() == 0);
  }
}

TEST_CASE("center") {
  const CVector constant{{1.0, 1.0}, {1.0, 1.0}};
  for (const cplx& v : center(constant)) CHECK(std::abs(v) == 0.0);

  const CVector pair{{2.0, 0.0}, {0.0, 0.0}};
  const CVector centered = center(pair);
  CHECK(std::abs(centered[0] - cplx{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(centered[1] - cplx{-1.0, 0.0}) < 1e-15);

  Rng rng(11);
  const CVector random = sample_complex_gaussian(rng, 257);
  cplx mean{0, 0};
  for (const cplx& v : center(random)) mean += v;
  mean /= 257.0;
  CHECK(std::abs(mean) < 1e-14);
}

TEST_CASE("hermitian_solve identity and scalar systems") {
  CMatrix eye(3, 3);
  for (std::size_t i = 0; i < 3; ++i) eye(i, i) = {1.0, 0.0};
  CMatrix b(3, 1);
  b(0, 0) = {1.0, 2.0};
  b(1, 0) = {-3.0, 0.5};
  b(2, 0) = {0.0, -1.0};
  const CMatrix x = hermitian_solve(eye, b);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(x(i, 0) - b(i, 0)) < 1e-15);
  }

  CMatrix two(1, 1);
  two(0, 0) = {2.0, 0.0};
  CMatrix rhs(1, 1);
  rhs(0, 0) = {4.0, 2.0};
  const CMatrix scalar = hermitian_solve(two, rhs);
  CHECK(std::abs(scalar(0, 0) - cplx{2.0, 1.0}) < 1e-15);
}

TEST_CASE("hermitian_solve multiply-back residual") {
  Rng rng(21);
  for (std::size_t dim : {6ul, 40ul, 200ul}) {
    const CMatrix g = random_hermitian_pd(rng, dim);
    const CMatrix b = random_complex_matrix(rng, dim, 2);
    const CMatrix x = hermitian_solve(g, b);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t rhs = 0; rhs < b.cols(); ++rhs) {
      for (std::size_t i = 0; i < dim; ++i) {
        cplx acc{0, 0};
        for (std::size_t k = 0; k < dim; ++k) acc += g(i, k) * x(k, rhs);
        num += std::norm(acc - b(i, rhs));
        den += std::norm(b(i, rhs));
      }
    }
    CHECK(std::sqrt(num / den) <= 1e-10);
  }
}

TEST_CASE("hermitian_solve error paths") {
  CMatrix singular(2, 2);
  singular(0, 0) = {1.0, 0.0};
  singular(0, 1) = {1.0, 0.0};
  singular(1, 0) = {1.0, 0.0};
  singular(1, 1) = {1.0, 0.0};
  CMatrix b(2, 1);
  b(0, 0) = {1.0, 0.0};
  b(1, 0) = {1.0, 0.0};
  CHECK_THROWS_AS(hermitian_solve(singular, b), NotPositiveDefinite);

  CMatrix skew(2, 2);
  skew(0, 0) = {1.0, 0.0};
  skew(0, 1) = {0.5, 0.0};
  skew(1, 0) = {0.4, 0.0};  // not the conjugate of (0, 1)
  skew(1, 1) = {1.0, 0.0};
  CHECK_THROWS_AS(hermitian_solve(skew, b), Error);
}

TEST_CASE("csign") {
  CHECK(csign({3.0, 0.0}) == cplx{1.0, 0.0});
  CHECK(std::abs(csign({0.0, 2.0}) - cplx{0.0, 1.0}) < 1e-15);
  const cplx diag = csign({1.0, 1.0});
  CHECK(std::abs(std::abs(diag) - 1.0) < 1e-15);
  CHECK(std::abs(diag - cplx{1.0, 1.0} / std::sqrt(2.0)) < 1e-15);
  CHECK(csign({0.0, 0.0}) == cplx{0.0, 0.0});

  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const cplx c = rng.complex_gaussian();
    const cplx s = csign(c);
    CHECK(std::abs(s * std::conj(s) - cplx{1.0, 0.0}) < 1e-14);
  }
}
