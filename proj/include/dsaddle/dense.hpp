// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <initializer_list>
#include <vector>

#include "dsaddle/errors.hpp"
#include "dsaddle/vec.hpp"

namespace dsaddle {

/// Row-major rectangular matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  const double* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * cols_; }
  double* row(int i) { return a_.data() + static_cast<std::size_t>(i) * cols_; }

  Vector apply(const Vector& x) const;             // M x
  Vector apply_transpose(const Vector& x) const;   // M^T x
  DenseMatrix transposed() const;
  DenseMatrix multiply(const DenseMatrix& other) const;

  double max_abs() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

/// Square matrix with storage-level symmetry: every write sets both mirror
/// entries, and construction from a general matrix averages the two inputs,
/// so entries(i,j) == entries(j,i) holds exactly.
class DenseSymMatrix {
 public:
  DenseSymMatrix() = default;
  explicit DenseSymMatrix(int order);
  DenseSymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  /// Average of the (i,j) and (j,i) inputs.
  static DenseSymMatrix symmetrized(const DenseMatrix& m);
  static DenseSymMatrix identity(int n);
  static DenseSymMatrix diagonal(const Vector& d);

  int order() const { return order_; }

  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * order_ + j];
  }
  void set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * order_ + j] = v;
    a_[static_cast<std::size_t>(j) * order_ + i] = v;
  }
  void add(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * order_ + j] += v;
    if (i != j) a_[static_cast<std::size_t>(j) * order_ + i] += v;
  }

  Vector apply(const Vector& x) const;
  DenseMatrix to_dense() const;
  double max_abs() const;
  double max_diag() const;

  const std::vector<double>& data() const { return a_; }

 private:
  int order_ = 0;
  std::vector<double> a_;
};

/// All eigenvalues of a symmetric problem, sorted ascending.
struct Spectrum {
  std::vector<double> eigenvalues;
  double min = 0.0;
  double max = 0.0;

  static Spectrum from_sorted(std::vector<double> vals);
};

}  // namespace dsaddle
