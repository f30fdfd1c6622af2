// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsaddle/errors.hpp"

namespace dsaddle {

double chebyshev_T(int l, double x) {
  if (l == 0) return 1.0;
  if (l == 1) return x;
  double prev = 1.0, cur = x;
  for (int k = 2; k <= l; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::pair<double, double> solve_quadratic_real(double b, double c, double disc_tol_scale) {
  const double disc = b * b - 4.0 * c;
  const double tol = disc_tol_scale * std::max({1.0, b * b, std::abs(c)});
  if (disc < -tol) throw ComplexRootsError("quadratic has complex roots");
  const double sq = std::sqrt(std::max(disc, 0.0));
  double r1, r2;
  if (b == 0.0 && sq == 0.0) {
    r1 = r2 = 0.0;
  } else {
    // Root of larger magnitude first, companion from the product.
    const double q = -0.5 * (b + std::copysign(sq, b));
    r1 = q;
    r2 = (q != 0.0) ? c / q : -b - q;
  }
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

namespace {

double cubic_value(double x, double c2, double c1, double c0) {
  return ((x + c2) * x + c1) * x + c0;
}

double cubic_newton_polish(double x, double c2, double c1, double c0) {
  const double f = cubic_value(x, c2, c1, c0);
  const double df = (3.0 * x + 2.0 * c2) * x + c1;
  if (df != 0.0) {
    const double step = f / df;
    if (std::isfinite(step)) return x - step;
  }
  return x;
}

}  // namespace

std::array<double, 3> solve_cubic_real(double c2, double c1, double c0, double disc_tol) {
  // Depressed form t^3 + p t + q with x = t - c2/3.
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = c2 * (2.0 * c2 * c2 / 27.0 - c1 / 3.0) + c0;

  // Discriminant test on the scale-normalized depressed cubic.
  const double s = std::max({1.0, std::abs(c2), std::sqrt(std::abs(c1)),
                             std::cbrt(std::abs(c0))});
  const double ph = p / (s * s);
  const double qh = q / (s * s * s);
  const double disc_scaled = -4.0 * ph * ph * ph - 27.0 * qh * qh;
  if (disc_scaled < -disc_tol) throw ComplexRootsError("cubic has complex roots");

  std::array<double, 3> roots;
  if (p >= 0.0) {
    // Only reachable near a triple root (p -> 0-): treat as one.
    const double t = std::cbrt(-q);
    roots = {t - shift, t - shift, t - shift};
  } else {
    const double a = 2.0 * std::sqrt(-p / 3.0);
    double cosarg = 3.0 * q / (p * a);
    cosarg = std::clamp(cosarg, -1.0, 1.0);
    const double phi = std::acos(cosarg) / 3.0;
    constexpr double two_thirds_pi = 2.0 * std::numbers::pi / 3.0;
    for (int k = 0; k < 3; ++k)
      roots[k] = a * std::cos(phi - two_thirds_pi * k) - shift;
  }

  for (double& r : roots) r = cubic_newton_polish(r, c2, c1, c0);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace dsaddle
