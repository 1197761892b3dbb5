#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctrex {

// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A column has zero variance, so it cannot be scaled to unit norm.
class ConstantColumn : public Error {
 public:
  ConstantColumn(std::size_t column, const std::string& what)
      : Error(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

// Hermitian factorization hit a non-positive pivot.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// The active set became numerically collinear during the forward path.
class SingularActiveSet : public Error {
 public:
  using Error::Error;
};

// Angular grid resolution does not tile [-90, 90).
class InvalidGrid : public Error {
 public:
  using Error::Error;
};

// A requested source angle does not lie on the angular grid.
class OffGridSource : public Error {
 public:
  using Error::Error;
};

}  // namespace ctrex
