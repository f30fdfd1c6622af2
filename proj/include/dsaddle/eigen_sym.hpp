// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "dsaddle/dense.hpp"
#include "dsaddle/factor.hpp"

namespace dsaddle {

/// All eigenvalues of a symmetric matrix, ascending. Householder reduction to
/// tridiagonal form followed by implicitly shifted QL sweeps (Wilkinson
/// shift). Throws NoConvergenceError if any eigenvalue needs more than 50
/// sweeps.
Spectrum sym_eigenvalues(const DenseSymMatrix& m, int max_sweeps = 50);

/// Eigenvalues of the pencil (a, b) with b SPD, i.e. of b^{-1} a, computed by
/// whitening with the Cholesky factor of b.
Spectrum gen_sym_eigenvalues(const DenseSymMatrix& a, const DenseSymMatrix& b);

/// Eigenvalues of w a with w SPD, i.e. of the pencil (a, w^{-1}). Used when
/// the *inverse* of the pencil's right-hand matrix is what is materialized.
Spectrum gen_sym_eigenvalues_inverse(const DenseSymMatrix& a, const DenseSymMatrix& w);

/// Extreme eigenvalues of the operator pencil (W, B^{-1}), i.e. of B W, for
/// symmetric PSD W and SPD B given only through their actions. B W is
/// self-adjoint in the W inner product; a Lanczos process in that inner
/// product estimates both extreme Ritz values without materializing
/// anything. Intended for scales where the dense route is not affordable;
/// estimates converge from inside the spectrum.
std::pair<double, double> pencil_extremes_lanczos(
    const std::function<void(const Vector&, Vector&)>& apply_w,
    const std::function<void(const Vector&, Vector&)>& apply_b, int dim, int steps = 80,
    std::uint64_t seed = 12345);

}  // namespace dsaddle
