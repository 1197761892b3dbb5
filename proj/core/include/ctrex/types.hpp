#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ctrex/errors.hpp"

namespace ctrex {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense column-major complex matrix. Column access is contiguous, which is
// the layout every hot loop in the forward selector relies on.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) {
    return data_[j * rows_ + i];
  }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[j * rows_ + i];
  }

  std::span<cplx> col(std::size_t j) {
    return {data_.data() + j * rows_, rows_};
  }
  std::span<const cplx> col(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }

  const std::vector<cplx>& data() const noexcept { return data_; }
  std::vector<cplx>& data() noexcept { return data_; }

  // [a b] side-by-side; row counts must agree.
  static CMatrix concat_cols(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows()) {
      throw DimensionMismatch("concat_cols: row counts differ");
    }
    CMatrix out(a.rows(), a.cols() + b.cols());
    std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(),
              out.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

}  // namespace ctrex
