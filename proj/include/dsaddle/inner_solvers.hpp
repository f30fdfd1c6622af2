// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "dsaddle/chebyshev.hpp"
#include "dsaddle/surrogate_amg.hpp"

namespace dsaddle {

/// Shat^{-1} for the regularized saddle structure S = (1/beta) M:
/// r -> beta * (Chebyshev approximation of M^{-1}) r.
LinearOperator build_shat_inverse(double beta, const ChebyshevSolver& cheb);

/// Xhat^{-1} = (4/3) Zhat^{-1} M Zhat^{-1} with Z = sqrt(beta) L + M; the
/// surrogate must be built on that Z. The 3/4 factor in Xhat centers the
/// exactly-approximated spectrum on [2/3, 4/3].
LinearOperator build_xhat_inverse_full(double beta, const SparseMatrix& m,
                                       const SparseMatrix& l, const SurrogateAMG& amg);

/// Xhat^{-1} = Zhat^{-1} M Zhat^{-1} with Z = sqrt(beta) L; the surrogate
/// must be built on that Z (L is stiffness + mass here, hence SPD).
LinearOperator build_xhat_inverse_boundary(double beta, const SparseMatrix& m,
                                           const SparseMatrix& l, const SurrogateAMG& amg);

}  // namespace dsaddle
