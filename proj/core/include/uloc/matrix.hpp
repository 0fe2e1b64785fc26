#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "uloc/error.hpp"

namespace uloc {

// Dense row-major matrix. A default-constructed entry is the ring's zero for
// every ring used here.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw ShapeMismatch("entry count " + std::to_string(data_.size()) + " does not match " +
                          std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix sub(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix s(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
    return s;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix s(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(idx[i], j);
    return s;
  }

  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix s(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(i, idx[j]);
    return s;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_ && a.rows_ != 0 && b.rows_ != 0)
      throw ShapeMismatch("vstack of matrices with different column counts");
    std::size_t cols = a.rows_ == 0 ? b.cols_ : a.cols_;
    if (a.rows_ == 0 && b.rows_ == 0) cols = std::max(a.cols_, b.cols_);
    Matrix s(a.rows_ + b.rows_, cols);
    s.set_block(0, 0, a);
    s.set_block(a.rows_, 0, b);
    return s;
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ && a.cols_ != 0 && b.cols_ != 0)
      throw ShapeMismatch("hstack of matrices with different row counts");
    std::size_t rows = a.cols_ == 0 ? b.rows_ : a.rows_;
    if (a.cols_ == 0 && b.cols_ == 0) rows = std::max(a.rows_, b.rows_);
    Matrix s(rows, a.cols_ + b.cols_);
    s.set_block(0, 0, a);
    s.set_block(0, a.cols_, b);
    return s;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

}  // namespace uloc
