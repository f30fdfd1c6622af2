// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/dense.hpp"

#include <algorithm>
#include <cmath>

namespace dsaddle {

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  a_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw DimensionError("ragged initializer");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector DenseMatrix::apply(const Vector& x) const {
  if (static_cast<int>(x.size()) != cols_) throw DimensionError("matvec size mismatch");
  Vector y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    const double* row = a_.data() + static_cast<std::size_t>(i) * cols_;
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector DenseMatrix::apply_transpose(const Vector& x) const {
  if (static_cast<int>(x.size()) != rows_) throw DimensionError("matvec size mismatch");
  Vector y(cols_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    const double* row = a_.data() + static_cast<std::size_t>(i) * cols_;
    const double xi = x[i];
    for (int j = 0; j < cols_; ++j) y[j] += row[j] * xi;
  }
  return y;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
  if (cols_ != other.rows_) throw DimensionError("matmul size mismatch");
  DenseMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      const double* brow = other.a_.data() + static_cast<std::size_t>(k) * other.cols_;
      double* orow = out.a_.data() + static_cast<std::size_t>(i) * other.cols_;
      for (int j = 0; j < other.cols_; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

double DenseMatrix::max_abs() const {
  double s = 0.0;
  for (double v : a_) s = std::max(s, std::abs(v));
  return s;
}

DenseSymMatrix::DenseSymMatrix(int order)
    : order_(order), a_(static_cast<std::size_t>(order) * order, 0.0) {
  if (order < 1) throw DimensionError("symmetric matrix order must be >= 1");
}

DenseSymMatrix::DenseSymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : DenseSymMatrix(symmetrized(DenseMatrix(rows))) {}

DenseSymMatrix DenseSymMatrix::symmetrized(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("cannot symmetrize a non-square matrix");
  DenseSymMatrix s(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j <= i; ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

DenseSymMatrix DenseSymMatrix::identity(int n) {
  DenseSymMatrix s(n);
  for (int i = 0; i < n; ++i) s.set(i, i, 1.0);
  return s;
}

DenseSymMatrix DenseSymMatrix::diagonal(const Vector& d) {
  DenseSymMatrix s(static_cast<int>(d.size()));
  for (int i = 0; i < s.order(); ++i) s.set(i, i, d[i]);
  return s;
}

Vector DenseSymMatrix::apply(const Vector& x) const {
  if (static_cast<int>(x.size()) != order_) throw DimensionError("matvec size mismatch");
  Vector y(order_, 0.0);
  for (int i = 0; i < order_; ++i) {
    const double* row = a_.data() + static_cast<std::size_t>(i) * order_;
    double s = 0.0;
    for (int j = 0; j < order_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix DenseSymMatrix::to_dense() const {
  DenseMatrix m(order_, order_);
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double DenseSymMatrix::max_abs() const {
  double s = 0.0;
  for (double v : a_) s = std::max(s, std::abs(v));
  return s;
}

double DenseSymMatrix::max_diag() const {
  double s = 0.0;
  for (int i = 0; i < order_; ++i) s = std::max(s, (*this)(i, i));
  return s;
}

Spectrum Spectrum::from_sorted(std::vector<double> vals) {
  Spectrum s;
  s.eigenvalues = std::move(vals);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  s.min = s.eigenvalues.front();
  s.max = s.eigenvalues.back();
  return s;
}

}  // namespace dsaddle
