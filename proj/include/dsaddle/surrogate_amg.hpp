// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "dsaddle/linear_operator.hpp"
#include "dsaddle/sparse.hpp"

namespace dsaddle {

enum class AmgMode {
  ExactCholesky,    // direct solve; quality pair (1, 1) by construction
  SymGaussSeidel,   // k sweeps of stationary symmetric Gauss-Seidel
  TwoGrid,          // SGS-smoothed two-grid V-cycles (needs a prolongation)
};

AmgMode parse_amg_mode(const std::string& text, int* sweeps);

/// Stand-in for an algebraic multigrid solve on an SPD matrix Z: a fixed SPD
/// linear operator approximating Z^{-1}. The approximation quality feeding
/// the bound machinery is the measured pair of extreme eigenvalues of the
/// sandwich pencil ([Zhat Minv Zhat]^{-1} [Z Minv Z]) for the mass matrix M
/// it is used with, where Zhat is the implicit matrix of the solve.
class SurrogateAMG {
 public:
  SurrogateAMG(SparseMatrix z, AmgMode mode, int sweeps = 2,
               std::optional<SparseMatrix> prolongation = std::nullopt);

  AmgMode mode() const { return mode_; }
  int dim() const { return z_->rows(); }
  const SparseMatrix& target() const { return *z_; }

  void solve(const Vector& b, Vector& x) const;
  Vector solve(const Vector& b) const;
  LinearOperator as_operator() const;

  /// (gamma_min, gamma_max) of the sandwich pencil against the exact
  /// Z M^{-1} Z; (1, 1) for the exact mode without computation.
  std::pair<double, double> measure_quality(const SparseMatrix& m) const;

 private:
  void sgs_sweep(const Vector& b, Vector& x) const;
  void two_grid_cycle(const Vector& b, Vector& x) const;

  std::shared_ptr<const SparseMatrix> z_;
  AmgMode mode_;
  int sweeps_;
  std::shared_ptr<const BandCholesky> direct_;         // exact mode
  std::shared_ptr<const SparseMatrix> prolongation_;   // two-grid mode
  std::shared_ptr<const SparseMatrix> coarse_;         // P^T Z P
  std::shared_ptr<const BandCholesky> coarse_solve_;
};

}  // namespace dsaddle
