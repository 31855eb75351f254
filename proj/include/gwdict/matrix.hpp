#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "gwdict/error.hpp"

namespace gwdict {

using Vector = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(squared_norm(a)); }

inline double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Vector col(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Vector operator*(std::span<const double> x) const {
    if (x.size() != cols_) throw InvalidInput("matrix-vector dimension mismatch");
    Vector y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) y[r] = dot(row(r), x);
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix-matrix dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  double max_abs() const { return gwdict::max_abs(data_); }

  double frobenius_norm() const { return gwdict::norm(data_); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Read-only view of one sparse column.
struct SparseColumn {
  std::span<const std::size_t> index;
  std::span<const double> value;

  double dot(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < index.size(); ++k) s += value[k] * x[index[k]];
    return s;
  }

  void scatter(std::span<double> out, double scale = 1.0) const {
    for (std::size_t k = 0; k < index.size(); ++k) out[index[k]] += scale * value[k];
  }

  Vector dense(std::size_t n) const {
    Vector v(n, 0.0);
    scatter(v);
    return v;
  }
};

// Compressed sparse-column matrix, built column by column.
class CscMatrix {
 public:
  CscMatrix() : col_ptr_{0} {}
  explicit CscMatrix(std::size_t rows) : rows_(rows), col_ptr_{0} {}

  static CscMatrix identity(std::size_t n) {
    CscMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t idx[] = {i};
      const double val[] = {1.0};
      m.push_column(idx, val);
    }
    return m;
  }

  // Stores every entry with |value| > drop_below.
  static CscMatrix from_dense(const Matrix& m, double drop_below = 0.0) {
    CscMatrix out(m.rows());
    std::vector<std::size_t> idx;
    Vector val;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      idx.clear();
      val.clear();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        if (std::abs(m(r, c)) > drop_below) {
          idx.push_back(r);
          val.push_back(m(r, c));
        }
      }
      out.push_column(idx, val);
    }
    return out;
  }

  // Row indices must be strictly increasing and < rows().
  void push_column(std::span<const std::size_t> index, std::span<const double> value) {
    if (index.size() != value.size()) throw InvalidInput("sparse column index/value size mismatch");
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (index[k] >= rows_ || (k > 0 && index[k] <= index[k - 1]))
        throw InvalidInput("sparse column indices must be increasing and in range");
    }
    row_index_.insert(row_index_.end(), index.begin(), index.end());
    values_.insert(values_.end(), value.begin(), value.end());
    col_ptr_.push_back(row_index_.size());
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return col_ptr_.size() - 1; }
  std::size_t stored() const noexcept { return values_.size(); }

  SparseColumn column(std::size_t c) const {
    const std::size_t b = col_ptr_[c];
    const std::size_t e = col_ptr_[c + 1];
    return {std::span<const std::size_t>(row_index_).subspan(b, e - b),
            std::span<const double>(values_).subspan(b, e - b)};
  }

  // Number of entries with |value| > threshold.
  std::size_t nnz(double threshold = 0.0) const {
    return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(),
                                                  [&](double v) { return std::abs(v) > threshold; }));
  }

  // Aᵀx
  Vector transpose_times(std::span<const double> x) const {
    if (x.size() != rows_) throw InvalidInput("dimension mismatch: signal length differs from row count");
    Vector y(cols());
    for (std::size_t c = 0; c < cols(); ++c) y[c] = column(c).dot(x);
    return y;
  }

  // Ax
  Vector times(std::span<const double> a) const {
    if (a.size() != cols()) throw InvalidInput("dimension mismatch: coefficient length differs from column count");
    Vector y(rows_, 0.0);
    for (std::size_t c = 0; c < cols(); ++c)
      if (a[c] != 0.0) column(c).scatter(y, a[c]);
    return y;
  }

  Matrix to_dense() const {
    Matrix m(rows_, cols());
    for (std::size_t c = 0; c < cols(); ++c) {
      const auto col = column(c);
      for (std::size_t k = 0; k < col.index.size(); ++k) m(col.index[k], c) = col.value[k];
    }
    return m;
  }

  // AᵀA, accumulated through per-row column lists so cost tracks overlap.
  Matrix gram() const {
    std::vector<std::vector<std::pair<std::size_t, double>>> by_row(rows_);
    for (std::size_t c = 0; c < cols(); ++c) {
      const auto col = column(c);
      for (std::size_t k = 0; k < col.index.size(); ++k) by_row[col.index[k]].emplace_back(c, col.value[k]);
    }
    Matrix g(cols(), cols());
    for (const auto& entries : by_row)
      for (const auto& [ci, vi] : entries)
        for (const auto& [cj, vj] : entries) g(ci, cj) += vi * vj;
    return g;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<std::size_t> col_ptr_;
  std::vector<std::size_t> row_index_;
  Vector values_;
};

}  // namespace gwdict
