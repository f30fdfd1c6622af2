// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/indicators.hpp"

#include <cmath>

#include "dsaddle/chebyshev.hpp"
#include "dsaddle/eigen_sym.hpp"
#include "dsaddle/errors.hpp"

namespace dsaddle {

void GammaIndicators::refresh_assumption_flags() {
  straddle_A = gamma_A.first < 1.0 && 1.0 < gamma_A.second;
  one_in_R = gamma_R.first <= 1.0 && 1.0 <= gamma_R.second;
  one_in_X = gamma_X.first <= 1.0 && 1.0 <= gamma_X.second;
  a_max_below_2 = gamma_A.second < 2.0;
}

std::vector<std::string> GammaIndicators::assumption_warnings() const {
  std::vector<std::string> w;
  if (!straddle_A) w.push_back("gamma_A interval does not straddle 1");
  if (!one_in_R) w.push_back("gamma_R interval does not contain 1");
  if (!one_in_X) w.push_back("gamma_X interval does not contain 1");
  if (!a_max_below_2) w.push_back("gamma_A max is not below 2");
  return w;
}

GammaIndicators compute_indicators(const DoubleSaddleSystem& sys,
                                   const BlockPreconditioner& pc) {
  if (sys.total() > kDenseBudget) throw BudgetError("indicator computation exceeds order budget");

  GammaIndicators g;

  const DenseSymMatrix a_inv = materialize_symmetric(pc.a_inv);
  const Spectrum sa = gen_sym_eigenvalues_inverse(sys.A.to_dense_symmetric(), a_inv);
  g.gamma_A = {sa.min, sa.max};

  const DenseSymMatrix stilde = schur_S_tilde(sys, pc.a_inv);
  const DenseSymMatrix s_inv = materialize_symmetric(pc.s_inv);
  const Spectrum sr = gen_sym_eigenvalues_inverse(stilde, s_inv);
  g.gamma_R = {sr.min, sr.max};

  const DenseSymMatrix xtilde = schur_X_tilde(sys, pc.s_inv);
  const DenseSymMatrix x_inv = materialize_symmetric(pc.x_inv);
  const Spectrum sx = gen_sym_eigenvalues_inverse(xtilde, x_inv);
  g.gamma_X = {sx.min, sx.max};

  const DenseSymMatrix e_dense = sys.E.to_dense_symmetric();
  Spectrum se = gen_sym_eigenvalues_inverse(e_dense, x_inv);
  auto clamp_tiny = [](double v) { return std::abs(v) < 1e-10 ? 0.0 : v; };
  g.gamma_E = {clamp_tiny(se.min), clamp_tiny(se.max)};

  // The coupling Gram K K^T is congruent to the pencil
  // (C Shat^{-1} C^T, Xhat) = (Xtilde - E, Xhat).
  DenseSymMatrix gram(sys.p);
  for (int i = 0; i < sys.p; ++i)
    for (int j = 0; j <= i; ++j) gram.set(i, j, xtilde(i, j) - e_dense(i, j));
  const Spectrum sk = gen_sym_eigenvalues_inverse(gram, x_inv);
  g.gamma_K = {sk.min, sk.max};

  g.square_c = (sys.m == sys.p);
  g.refresh_assumption_flags();
  return g;
}

GammaIndicators analytic_indicators_pdeco(int l, double beta, Observation obs,
                                          std::pair<double, double> amg_quality,
                                          const MeasuredOverrides& measured,
                                          double lmin, double lmax) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive");
  const double eta = eta_factor(l, lmin, lmax);
  const auto [amg_min, amg_max] = amg_quality;

  GammaIndicators g;
  g.gamma_A = {1.0 - eta, 1.0 + eta};
  g.gamma_R = {(1.0 - eta) * (1.0 - eta), (1.0 + eta) * (1.0 + eta)};

  if (obs == Observation::Full) {
    g.gamma_E = {0.0, (4.0 / 3.0) * amg_max};
    g.gamma_X = {(2.0 / 3.0) * amg_min * (1.0 - eta), (4.0 / 3.0) * amg_max * (1.0 + eta)};
    if (!measured.gamma_K)
      throw MissingMeasurementError("full observation needs a measured gamma_K pair");
    g.gamma_K = *measured.gamma_K;
  } else {
    if (!measured.gamma_E_max)
      throw MissingMeasurementError("boundary observation needs a measured gamma_E max");
    if (!measured.gamma_X_max)
      throw MissingMeasurementError("boundary observation needs a measured gamma_X max");
    g.gamma_E = {0.0, *measured.gamma_E_max};
    g.gamma_X = {amg_min * (1.0 - eta), *measured.gamma_X_max};
    g.gamma_K = {amg_min * (1.0 - eta), amg_max * (1.0 + eta)};
  }

  g.square_c = true;  // both discretized control problems have square invertible C
  g.refresh_assumption_flags();
  return g;
}

}  // namespace dsaddle
