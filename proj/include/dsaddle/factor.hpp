// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "dsaddle/dense.hpp"

namespace dsaddle {

/// Lower-triangular L with L L^T = m.
/// Throws NotSpdError when a pivot falls at or below pivot_tol_scale times
/// the largest diagonal entry of the input.
DenseMatrix cholesky_factor(const DenseSymMatrix& m, double pivot_tol_scale = 1e-14);

/// Solve L x = b (L lower triangular).
Vector forward_substitute(const DenseMatrix& lower, const Vector& b);

/// Solve L^T x = b.
Vector backward_substitute(const DenseMatrix& lower, const Vector& b);

/// Solve (L L^T) x = b for a precomputed Cholesky factor.
Vector cholesky_solve(const DenseMatrix& lower, const Vector& b);

/// Explicit inverse of the factored matrix, as a symmetric matrix.
DenseSymMatrix cholesky_inverse(const DenseMatrix& lower);

/// L^{-1} m (columns of m forward-substituted).
DenseMatrix solve_lower_left(const DenseMatrix& lower, const DenseMatrix& m);

}  // namespace dsaddle
