// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "dsaddle/linear_operator.hpp"
#include "dsaddle/saddle_system.hpp"

namespace dsaddle {

/// The SPD preconditioner built from three invertible block operators and the
/// coupling blocks,
///   P = P_L P_D^{-1} P_L^T,
///   P_L = [Ahat 0 0; B -Shat 0; 0 C Xhat],  P_D = diag(Ahat, Shat, Xhat),
/// held purely through the inverse actions of Ahat, Shat, Xhat.
struct BlockPreconditioner {
  LinearOperator a_inv, s_inv, x_inv;
  AnyMatrix B, C;
  int n = 0, m = 0, p = 0;

  int total() const { return n + m + p; }
  void validate() const;
};

BlockPreconditioner make_preconditioner(LinearOperator a_inv, LinearOperator s_inv,
                                        LinearOperator x_inv, AnyMatrix b, AnyMatrix c);

/// Exact-inverse preconditioner blocks for a given system: Ahat = A,
/// Shat = B A^{-1} B^T, Xhat = E + C Shat^{-1} C^T, all applied via dense
/// Cholesky solves.
BlockPreconditioner make_exact_preconditioner(const DoubleSaddleSystem& sys);

/// w = P^{-1} r. The factored form is applied with inverse block actions
/// only: expanding P_L P_D^{-1} P_L^T shows the solve needs Ahat^{-1},
/// Shat^{-1}, Xhat^{-1} plus multiplications by B, B^T, C, C^T, so operators
/// that only define an inverse action (polynomial or multigrid-style
/// approximations) stay first-class.
Vector apply_preconditioner(const BlockPreconditioner& pc, const Vector& r);

/// P^{-1} materialized by applying the preconditioner to identity columns.
DenseSymMatrix assemble_preconditioner_inverse_dense(const BlockPreconditioner& pc);

/// Explicit P, SPD-verified by Cholesky.
DenseSymMatrix assemble_preconditioner_dense(const BlockPreconditioner& pc);

/// Stilde = B Ahat^{-1} B^T, built by applying the inverse operator to the
/// columns of B^T.
DenseSymMatrix schur_S_tilde(const DoubleSaddleSystem& sys, const LinearOperator& a_inv);

/// Xtilde = E + C Shat^{-1} C^T.
DenseSymMatrix schur_X_tilde(const DoubleSaddleSystem& sys, const LinearOperator& s_inv);

}  // namespace dsaddle
