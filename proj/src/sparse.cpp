// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "dsaddle/errors.hpp"

namespace dsaddle {

void SparseMatrix::Builder::add(int i, int j, double v) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw DimensionError("sparse builder entry out of range");
  entries_.push_back({i, j, v});
}

SparseMatrix SparseMatrix::Builder::finalize() {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });

  SparseMatrix m;
  m.rows_ = rows_;
  m.cols_ = cols_;
  m.row_offsets_.assign(rows_ + 1, 0);

  // Merge duplicates, then drop exact zeros.
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (const Entry& e : entries_) {
    if (!merged.empty() && merged.back().i == e.i && merged.back().j == e.j)
      merged.back().v += e.v;
    else
      merged.push_back(e);
  }
  for (const Entry& e : merged) {
    if (e.v == 0.0) continue;
    m.col_indices_.push_back(e.j);
    m.values_.push_back(e.v);
    ++m.row_offsets_[e.i + 1];
  }
  for (int i = 0; i < rows_; ++i) m.row_offsets_[i + 1] += m.row_offsets_[i];
  return m;
}

SparseMatrix SparseMatrix::identity(int n) {
  Builder b(n, n);
  for (int i = 0; i < n; ++i) b.add(i, i, 1.0);
  return b.finalize();
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& m, double drop_tol) {
  Builder b(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > drop_tol) b.add(i, j, m(i, j));
  return b.finalize();
}

void SparseMatrix::apply(const Vector& x, Vector& y) const {
  if (static_cast<int>(x.size()) != cols_) throw DimensionError("sparse matvec size mismatch");
  y.assign(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      s += values_[k] * x[col_indices_[k]];
    y[i] = s;
  }
}

void SparseMatrix::apply_transpose(const Vector& x, Vector& y) const {
  if (static_cast<int>(x.size()) != rows_) throw DimensionError("sparse matvec size mismatch");
  y.assign(cols_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      y[col_indices_[k]] += values_[k] * xi;
  }
}

Vector SparseMatrix::apply(const Vector& x) const {
  Vector y;
  apply(x, y);
  return y;
}

SparseMatrix SparseMatrix::transposed() const {
  Builder b(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      b.add(col_indices_[k], i, values_[k]);
  return b.finalize();
}

SparseMatrix SparseMatrix::scaled(double a) const {
  SparseMatrix m(*this);
  for (double& v : m.values_) v *= a;
  return m;
}

SparseMatrix SparseMatrix::plus(const SparseMatrix& other, double other_scale) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionError("sparse sum size mismatch");
  Builder b(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      b.add(i, col_indices_[k], values_[k]);
  for (int i = 0; i < other.rows_; ++i)
    for (int k = other.row_offsets_[i]; k < other.row_offsets_[i + 1]; ++k)
      b.add(i, other.col_indices_[k], other_scale * other.values_[k]);
  return b.finalize();
}

Vector SparseMatrix::diagonal() const {
  Vector d(std::min(rows_, cols_), 0.0);
  for (int i = 0; i < static_cast<int>(d.size()); ++i)
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      if (col_indices_[k] == i) d[i] = values_[k];
  return d;
}

int SparseMatrix::bandwidth() const {
  int bw = 0;
  for (int i = 0; i < rows_; ++i)
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      bw = std::max(bw, std::abs(i - col_indices_[k]));
  return bw;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      m(i, col_indices_[k]) = values_[k];
  return m;
}

double SparseMatrix::max_abs() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

BandCholesky::BandCholesky(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("band cholesky needs a square matrix");
  n_ = a.rows();
  bw_ = a.bandwidth();
  const int w = bw_ + 1;
  f_.assign(static_cast<std::size_t>(n_) * w, 0.0);

  auto band = [&](int i, int j) -> double& {
    return f_[static_cast<std::size_t>(i) * w + (bw_ - (i - j))];
  };

  double max_diag = 0.0;
  for (double d : a.diagonal()) max_diag = std::max(max_diag, d);
  const double pivot_floor = 1e-14 * max_diag;

  // Load the lower triangle into band storage.
  for (int i = 0; i < n_; ++i)
    for (int k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k) {
      const int j = a.col_indices()[k];
      if (j <= i) band(i, j) = a.values()[k];
    }

  for (int j = 0; j < n_; ++j) {
    double d = band(j, j);
    const int lo = std::max(0, j - bw_);
    for (int k = lo; k < j; ++k) {
      const double v = band(j, k);
      d -= v * v;
    }
    if (d <= pivot_floor) throw NotSpdError("band cholesky pivot not positive");
    const double ljj = std::sqrt(d);
    band(j, j) = ljj;
    const int hi = std::min(n_ - 1, j + bw_);
    for (int i = j + 1; i <= hi; ++i) {
      double s = band(i, j);
      const int start = std::max(lo, i - bw_);
      for (int k = start; k < j; ++k) s -= band(i, k) * band(j, k);
      band(i, j) = s / ljj;
    }
  }
}

void BandCholesky::solve(const Vector& b, Vector& x) const {
  if (static_cast<int>(b.size()) != n_) throw DimensionError("band solve size mismatch");
  const int w = bw_ + 1;
  auto band = [&](int i, int j) -> double {
    return f_[static_cast<std::size_t>(i) * w + (bw_ - (i - j))];
  };
  x = b;
  for (int i = 0; i < n_; ++i) {
    double s = x[i];
    const int lo = std::max(0, i - bw_);
    for (int k = lo; k < i; ++k) s -= band(i, k) * x[k];
    x[i] = s / band(i, i);
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = x[i];
    const int hi = std::min(n_ - 1, i + bw_);
    for (int k = i + 1; k <= hi; ++k) s -= band(k, i) * x[k];
    x[i] = s / band(i, i);
  }
}

Vector BandCholesky::solve(const Vector& b) const {
  Vector x;
  solve(b, x);
  return x;
}

}  // namespace dsaddle
