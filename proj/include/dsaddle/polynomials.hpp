// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <utility>

namespace dsaddle {

/// Chebyshev polynomial of the first kind, T_l(x), by three-term recurrence.
double chebyshev_T(int l, double x);

/// Ascending real roots of the monic quadratic x^2 + b x + c. The larger-
/// magnitude root is taken from the cancellation-safe branch, the companion
/// from the product c. Throws ComplexRootsError when the discriminant is
/// negative beyond -1e-14 * max(1, b^2, |c|).
std::pair<double, double> solve_quadratic_real(double b, double c,
                                               double disc_tol_scale = 1e-14);

/// Ascending real roots of the monic cubic x^3 + c2 x^2 + c1 x + c0, via the
/// trigonometric method on the depressed cubic, each root polished by one
/// Newton step. Throws ComplexRootsError when the scaled discriminant drops
/// below -1e-12.
std::array<double, 3> solve_cubic_real(double c2, double c1, double c0,
                                       double disc_tol = 1e-12);

}  // namespace dsaddle
