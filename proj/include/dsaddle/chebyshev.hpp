// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "dsaddle/linear_operator.hpp"
#include "dsaddle/sparse.hpp"

namespace dsaddle {

/// Error-reduction factor of l steps of Chebyshev semi-iteration on a
/// spectral interval [lmin, lmax] of the Jacobi-preconditioned matrix:
///   eta_l = 1 / T_l((lmax + lmin) / (lmax - lmin)),
/// strictly decreasing in l. Throws DegenerateIntervalError when
/// lmax - lmin <= 1e-14.
double eta_factor(int l, double lmin, double lmax);

/// Chebyshev semi-iteration with Jacobi splitting, approximating the action
/// of M^{-1}. The induced operator is a fixed polynomial in diag(M)^{-1} M
/// applied to diag(M)^{-1}, hence admissible as a building block of a fixed
/// SPD preconditioner; the spectrum of (operator * M) lies in
/// [1 - eta_l, 1 + eta_l] whenever the spectrum of diag(M)^{-1} M lies in
/// [lmin, lmax].
class ChebyshevSolver {
 public:
  ChebyshevSolver(SparseMatrix m, int iterations, double lmin, double lmax);

  /// Interval from the uniform P1 element bound [1/2, 2].
  static ChebyshevSolver with_analytic_interval(SparseMatrix m, int iterations);
  /// Interval from the computed extremes of diag(M)^{-1} M.
  static ChebyshevSolver with_measured_interval(SparseMatrix m, int iterations);

  int iterations() const { return iters_; }
  double lmin() const { return lmin_; }
  double lmax() const { return lmax_; }
  double eta() const { return eta_factor(iters_, lmin_, lmax_); }
  int dim() const { return mat_->rows(); }

  void apply(const Vector& r, Vector& x) const;
  Vector apply(const Vector& r) const;

  LinearOperator as_operator(double scale = 1.0) const;

 private:
  std::shared_ptr<const SparseMatrix> mat_;
  Vector inv_diag_;
  int iters_;
  double lmin_, lmax_;
};

}  // namespace dsaddle
