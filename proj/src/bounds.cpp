// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "dsaddle/errors.hpp"
#include "dsaddle/polynomials.hpp"

namespace dsaddle {

namespace {

constexpr double kGammaAOneTol = 1e-9;

void require_positive_indicators(const GammaIndicators& g, bool need_e) {
  auto pos_pair = [](const std::pair<double, double>& p) {
    return p.first > 0.0 && p.second >= p.first;
  };
  if (!pos_pair(g.gamma_A) || !pos_pair(g.gamma_R) || !pos_pair(g.gamma_K))
    throw ValidationError("indicator intervals must be positive with min <= max");
  if (need_e && (g.gamma_E.first < 0.0 || g.gamma_E.second < g.gamma_E.first))
    throw ValidationError("gamma_E interval must be nonnegative with min <= max");
}

}  // namespace

std::string to_string(BoundVariant v) {
  switch (v) {
    case BoundVariant::E0: return "E0";
    case BoundVariant::E0SquareC: return "E0_squareC";
    case BoundVariant::ENonzero: return "E_nonzero";
    case BoundVariant::ENonzeroSquareC: return "E_nonzero_squareC";
  }
  return "?";
}

bool SpectralBounds::contains(double eigenvalue, double inflate_rel) const {
  if (negative.contains(eigenvalue, inflate_rel)) return true;
  if (positive.contains(eigenvalue, inflate_rel)) return true;
  const Interval ia{inputs.gamma_A.first, inputs.gamma_A.second};
  return ia.contains(eigenvalue, inflate_rel);
}

double poly_p(double x, double gA, double gR) {
  return x * x - x * (gA * gR + gA - 2.0 * gR) - gR;
}

std::pair<double, double> p_roots(double gA, double gR) {
  // x^2 - 2 eta x - gR with eta = (gR + 1) gA / 2 - gR.
  const double b = -(gA * gR + gA - 2.0 * gR);
  return solve_quadratic_real(b, -gR);
}

double poly_pi(double x, double gA, double gR, double gK) {
  // Expanded monic form; the factored display cancels catastrophically when
  // gA approaches 1.
  const double c2 = -(2.0 * gK + gA + gR * (1.0 + gK) * (gA - 2.0));
  const double c1 = -(gR * (1.0 + gK) + gK * (1.0 - 2.0 * gA));
  const double c0 = gA * gK;
  return ((x + c2) * x + c1) * x + c0;
}

std::pair<double, double> c_roots(double gR, double gK) {
  return solve_quadratic_real(gR * (gK + 1.0) - 2.0 * gK, -gK);
}

std::pair<double, double> cE_roots(double gR, double gK, double gE) {
  return solve_quadratic_real(gR * (gK + 1.0) - 2.0 * gK - gE, -(gK + gE * gR));
}

std::array<double, 3> pi_roots(double gA, double gR, double gK) {
  if (!(gR > 0.0 && gK > 0.0)) throw ValidationError("pi_roots needs positive gR, gK");
  if (!(gA > 0.0 && gA < 2.0))
    throw ComplexRootsError("gamma_A outside the (0, 2) regime of the cubic analysis");
  if (std::abs(gA - 1.0) < kGammaAOneTol) {
    const auto [lo, hi] = c_roots(gR, gK);
    std::array<double, 3> r{lo, hi, 1.0};
    std::sort(r.begin(), r.end());
    return r;
  }
  const double c2 = -(2.0 * gK + gA + gR * (1.0 + gK) * (gA - 2.0));
  const double c1 = -(gR * (1.0 + gK) + gK * (1.0 - 2.0 * gA));
  const double c0 = gA * gK;
  return solve_cubic_real(c2, c1, c0);
}

double poly_piE(double x, double gA, double gR, double gK, double gE) {
  return poly_pi(x, gA, gR, gK) - gE * poly_p(x, gA, gR);
}

std::array<double, 3> piE_roots(double gA, double gR, double gK, double gE) {
  if (!(gR > 0.0 && gK > 0.0)) throw ValidationError("piE_roots needs positive gR, gK");
  if (gE < 0.0) throw ValidationError("piE_roots needs gE >= 0");
  if (!(gA > 0.0 && gA < 2.0))
    throw ComplexRootsError("gamma_A outside the (0, 2) regime of the cubic analysis");
  if (std::abs(gA - 1.0) < kGammaAOneTol) {
    const auto [lo, hi] = cE_roots(gR, gK, gE);
    std::array<double, 3> r{lo, hi, 1.0};
    std::sort(r.begin(), r.end());
    return r;
  }
  const double p_lin = gA * gR + gA - 2.0 * gR;
  const double c2 = -(2.0 * gK + gA + gR * (1.0 + gK) * (gA - 2.0)) - gE;
  const double c1 = -(gR * (1.0 + gK) + gK * (1.0 - 2.0 * gA)) + gE * p_lin;
  const double c0 = gA * gK + gE * gR;
  return solve_cubic_real(c2, c1, c0);
}

double beta_c(double gA, double gK) {
  const double second = gK + std::sqrt(gK * gK + gK);
  if (gA >= 2.0 - 1e-9) return second;
  return std::min(1.0 / (2.0 - gA), second);
}

double beta_c_E(double gE, double gK) {
  const double h = gK + 0.5 * gE;
  return h + std::sqrt(h * h + gK);
}

SpectralBounds bounds_e_zero(const GammaIndicators& g) {
  require_positive_indicators(g, false);
  const auto [gA_min, gA_max] = g.gamma_A;
  const auto [gR_min, gR_max] = g.gamma_R;
  const auto [gK_min, gK_max] = g.gamma_K;

  SpectralBounds b;
  b.variant = BoundVariant::E0;
  b.inputs = g;
  b.negative.lo = pi_roots(gA_min, gR_max, gK_max)[0];
  b.negative.hi = p_roots(gA_max, gR_min).first;
  b.positive.lo = pi_roots(gA_min, gR_max, gK_min)[1];
  b.positive.hi = std::max({pi_roots(gA_max, gR_min, gK_max)[2],
                            pi_roots(gA_max, gR_max, gK_max)[2],
                            beta_c(gA_max, gK_max)});
  return b;
}

SpectralBounds bounds_e_nonzero(const GammaIndicators& g) {
  require_positive_indicators(g, true);
  const auto [gA_min, gA_max] = g.gamma_A;
  const auto [gR_min, gR_max] = g.gamma_R;
  const auto [gK_min, gK_max] = g.gamma_K;
  const double gE_max = g.gamma_E.second;
  const double gX_min = g.gamma_X.first;
  (void)gK_min;

  SpectralBounds b;
  b.variant = BoundVariant::ENonzero;
  b.inputs = g;
  b.negative.lo = pi_roots(gA_min, gR_max, gK_max)[0];
  b.negative.hi = p_roots(gA_max, gR_min).first;
  // The lower-bound construction substitutes gK := gX.min with gE = 0.
  b.positive.lo = std::min(gX_min, piE_roots(gA_min, gR_max, gX_min, 0.0)[1]);
  b.positive.hi = std::max({piE_roots(gA_max, gR_min, gK_max, gE_max)[2],
                            piE_roots(gA_max, gR_max, gK_max, gE_max)[2],
                            beta_c_E(gE_max, gK_max)});
  return b;
}

SpectralBounds bounds_c_invertible(const GammaIndicators& g, bool e_zero) {
  if (!g.square_c)
    throw NotSquareError("refined bounds need a square invertible C (m == p)");
  if (e_zero) {
    require_positive_indicators(g, false);
    const auto [gA_min, gA_max] = g.gamma_A;
    const auto [gR_min, gR_max] = g.gamma_R;
    const auto [gK_min, gK_max] = g.gamma_K;
    SpectralBounds b = bounds_e_zero(g);
    b.variant = BoundVariant::E0SquareC;
    b.negative.lo = pi_roots(gA_min, gR_max, gK_max)[0];
    b.negative.hi = pi_roots(gA_max, gR_min, gK_min)[0];
    return b;
  }
  require_positive_indicators(g, true);
  const auto [gA_min, gA_max] = g.gamma_A;
  const auto [gR_min, gR_max] = g.gamma_R;
  const double gK_min = g.gamma_K.first;
  const double gE_min = g.gamma_E.first;
  const auto [gX_min, gX_max] = g.gamma_X;

  SpectralBounds b = bounds_e_nonzero(g);
  b.variant = BoundVariant::ENonzeroSquareC;
  // Negative interval through the substituted family w(x; gA, gR, gX, gE)
  // = pi_E(x; gA, gR, gX - gE, gE); the admissible gE at the upper endpoint
  // is capped by gX.min - gK.min.
  b.negative.lo = piE_roots(gA_min, gR_max, gX_max - gE_min, gE_min)[0];
  b.negative.hi = piE_roots(gA_max, gR_min, gK_min, std::max(gX_min - gK_min, 0.0))[0];
  return b;
}

double minres_bound(const SpectralBounds& b, int k) {
  const double s1 = std::sqrt(std::abs(b.negative.lo * b.positive.hi));
  const double s2 = std::sqrt(std::abs(b.negative.hi * b.positive.lo));
  const double factor = (s1 - s2) / (s1 + s2);
  double out = 2.0;
  for (int i = 0; i < k / 2; ++i) out *= factor;
  return out;
}

}  // namespace dsaddle
