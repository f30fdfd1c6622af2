// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "dsaddle/dense.hpp"
#include "dsaddle/vec.hpp"

namespace dsaddle {

/// Compressed-row sparse matrix. After finalization column indices are
/// strictly increasing within each row and no explicit zeros are stored.
class SparseMatrix {
 public:
  class Builder {
   public:
    Builder(int rows, int cols) : rows_(rows), cols_(cols) {}
    void add(int i, int j, double v);
    SparseMatrix finalize();

   private:
    struct Entry {
      int i, j;
      double v;
    };
    int rows_, cols_;
    std::vector<Entry> entries_;
  };

  SparseMatrix() = default;

  static SparseMatrix identity(int n);
  static SparseMatrix from_dense(const DenseMatrix& m, double drop_tol = 0.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  void apply(const Vector& x, Vector& y) const;            // y = A x
  void apply_transpose(const Vector& x, Vector& y) const;  // y = A^T x
  Vector apply(const Vector& x) const;

  SparseMatrix transposed() const;
  SparseMatrix scaled(double a) const;
  SparseMatrix plus(const SparseMatrix& other, double other_scale = 1.0) const;

  Vector diagonal() const;
  int bandwidth() const;  // max |i - j| over stored entries
  DenseMatrix to_dense() const;
  double max_abs() const;

 private:
  friend class Builder;
  int rows_ = 0, cols_ = 0;
  std::vector<int> row_offsets_;   // size rows + 1
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

/// Cholesky factorization of an SPD sparse matrix in banded storage.
/// Cost O(n b^2) where b is the bandwidth, which is what the lexicographic
/// grid orderings used here produce.
class BandCholesky {
 public:
  explicit BandCholesky(const SparseMatrix& a);

  int order() const { return n_; }
  void solve(const Vector& b, Vector& x) const;
  Vector solve(const Vector& b) const;

 private:
  int n_ = 0, bw_ = 0;
  std::vector<double> f_;  // row-major band: entry (i, j) at f_[i*(bw+1) + bw - (i-j)]
};

}  // namespace dsaddle
