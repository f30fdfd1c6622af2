// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <variant>

#include "dsaddle/dense.hpp"
#include "dsaddle/sparse.hpp"
#include "dsaddle/vec.hpp"

namespace dsaddle {

/// A block that may be stored dense or sparse, whichever the producer
/// supplied. Operations that need dense forms materialize on demand.
class AnyMatrix {
 public:
  AnyMatrix() : m_(DenseMatrix()) {}
  AnyMatrix(DenseMatrix m) : m_(std::move(m)) {}
  AnyMatrix(DenseSymMatrix m) : m_(std::move(m)) {}
  AnyMatrix(SparseMatrix m) : m_(std::move(m)) {}

  int rows() const;
  int cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(m_); }
  const SparseMatrix* sparse() const { return std::get_if<SparseMatrix>(&m_); }

  void apply(const Vector& x, Vector& y) const;
  void apply_transpose(const Vector& x, Vector& y) const;
  Vector apply(const Vector& x) const;

  DenseMatrix to_dense() const;
  DenseSymMatrix to_dense_symmetric() const;
  double max_abs() const;

 private:
  std::variant<DenseMatrix, DenseSymMatrix, SparseMatrix> m_;
};

/// The symmetric 3x3 block system
///   [ A  B^T  0  ] [x]   [b1]
///   [ B   0   C^T] [y] = [b2]
///   [ 0   C   E  ] [z]   [b3]
/// with A SPD (n x n), B (m x n) and C (p x m) of full row rank, E PSD
/// (p x p), and n >= m >= p >= 1.
struct DoubleSaddleSystem {
  AnyMatrix A, B, C, E;
  Vector rhs;
  int n = 0, m = 0, p = 0;

  int total() const { return n + m + p; }

  /// y = [system matrix] * x on the block structure, without assembly.
  Vector apply(const Vector& x) const;

  /// Checks dimensions, A SPD, E PSD, and full row rank of B and C.
  /// Throws ValidationError / NotSpdError on failure.
  void validate() const;
};

DoubleSaddleSystem make_system(AnyMatrix a, AnyMatrix b, AnyMatrix c, AnyMatrix e,
                               Vector rhs, bool validate = true);

/// Dense materialization of the block matrix in (x, y, z) order.
/// Throws BudgetError when n+m+p exceeds the dense budget (20000).
DenseSymMatrix assemble_full_matrix(const DoubleSaddleSystem& sys);

inline constexpr int kDenseBudget = 20000;

}  // namespace dsaddle
