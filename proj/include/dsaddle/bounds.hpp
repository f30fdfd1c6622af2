// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <utility>

#include "dsaddle/indicators.hpp"

namespace dsaddle {

struct Interval {
  double lo = 0.0, hi = 0.0;
  bool contains(double x, double inflate_rel = 0.0) const {
    const double a = lo - inflate_rel * std::max(1.0, std::abs(lo));
    const double b = hi + inflate_rel * std::max(1.0, std::abs(hi));
    return a <= x && x <= b;
  }
};

enum class BoundVariant { E0, E0SquareC, ENonzero, ENonzeroSquareC };

std::string to_string(BoundVariant v);

/// Inclusion intervals for the spectrum of the preconditioned matrix: one
/// interval of negative eigenvalues and one of positive eigenvalues, plus the
/// indicator snapshot they were produced from.
struct SpectralBounds {
  Interval negative;  // hi < 0
  Interval positive;  // lo > 0
  BoundVariant variant = BoundVariant::E0;
  GammaIndicators inputs;

  /// Containment test against negative ∪ positive ∪ I_A with relative
  /// inflation (default 1e-8) absorbing eigensolver tolerance.
  bool contains(double eigenvalue, double inflate_rel = 1e-8) const;
};

// --- the quadratic family ---------------------------------------------------

/// p(x; gA, gR) = x^2 - x (gA gR + gA - 2 gR) - gR.
double poly_p(double x, double gA, double gR);

/// The two roots of p, ascending; always real since the discriminant
/// eta^2 + gR stays positive. Evaluated through the cancellation-safe
/// quadratic path.
std::pair<double, double> p_roots(double gA, double gR);

// --- the cubic family -------------------------------------------------------

/// pi(x; gA, gR, gK) = (1+x)^2 (gA - x) gK + p(x; gA, gR) x (1 + gK),
/// a monic cubic in x; coefficients are expanded symbolically to avoid
/// cancellation near gA = 1.
double poly_pi(double x, double gA, double gR, double gK);

/// The three ascending real roots mu_a < 0 < mu_b < mu_c. Inputs with
/// |gA - 1| < 1e-9 route through the exact factorization into c(x) and the
/// root 1. Throws ComplexRootsError outside the admissible regime
/// (e.g. gA >= 2).
std::array<double, 3> pi_roots(double gA, double gR, double gK);

/// Roots of the gA = 1 factor c(x; gR, gK) = x^2 + x (gR(gK+1) - 2gK) - gK.
std::pair<double, double> c_roots(double gR, double gK);

/// pi_E(x) = pi(x) - gE p(x), and its roots; gE = 0 reduces to pi.
double poly_piE(double x, double gA, double gR, double gK, double gE);
std::array<double, 3> piE_roots(double gA, double gR, double gK, double gE);

/// Roots of the gA = 1 factor of pi_E,
/// cE(x) = x^2 + x (gR(gK+1) - 2gK - gE) - gK - gE gR.
std::pair<double, double> cE_roots(double gR, double gK, double gE);

// --- caps for the largest positive root -------------------------------------

/// min{ 1/(2-gA), gK + sqrt(gK^2 + gK) }; the first branch is skipped when
/// gA >= 2 - 1e-9 (it diverges there while the min stays valid).
double beta_c(double gA, double gK);

/// gK + gE/2 + sqrt((gK + gE/2)^2 + gK).
double beta_c_E(double gE, double gK);

// --- interval assembly ------------------------------------------------------

/// E == 0 variant:
///   negative = [mu_a(gA.min, gR.max, gK.max), lambda_-(gA.max, gR.min)]
///   positive = [mu_b(gA.min, gR.max, gK.min),
///               max{mu_c(gA.max, gR.min, gK.max), mu_c(gA.max, gR.max, gK.max),
///                   beta_c(gA.max, gK.max)}]
SpectralBounds bounds_e_zero(const GammaIndicators& g);

/// E != 0 variant: same negative interval; positive
///   [min{gX.min, mu_b^E(gA.min, gR.max, gX.min, 0)},
///    max{mu_c^E(gA.max, gR.min, gK.max, gE.max),
///        mu_c^E(gA.max, gR.max, gK.max, gE.max), beta_c_E(gE.max, gK.max)}].
/// The mu_b^E lower-bound evaluation substitutes gK := gX.min with gE = 0.
SpectralBounds bounds_e_nonzero(const GammaIndicators& g);

/// Refined negative intervals valid when C is square and invertible
/// (indicator snapshot must carry square_c, else NotSquareError):
///   e_zero:  negative = [mu_a(gA.min, gR.max, gK.max), mu_a(gA.max, gR.min, gK.min)]
///   e_nonzero: negative = [mu_a^E(gA.min, gR.max, gX.max - gE.min, gE.min),
///                          mu_a^E(gA.max, gR.min, gK.min, gX.min - gK.min)]
/// with the respective positive intervals of the unrefined variants.
SpectralBounds bounds_c_invertible(const GammaIndicators& g, bool e_zero);

// --- iteration bound ---------------------------------------------------------

/// Two-interval residual envelope for the minimum-residual iteration:
///   2 * ((sqrt|lo- * hi+| - sqrt|hi- * lo+|) /
///        (sqrt|lo- * hi+| + sqrt|hi- * lo+|))^floor(k/2).
double minres_bound(const SpectralBounds& b, int k);

}  // namespace dsaddle
