// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsaddle/preconditioner.hpp"

namespace dsaddle {

/// The six extremal-eigenvalue pairs that parameterize every inclusion
/// interval: quality of the three block approximations, the (3,3) residual
/// block, and the whitened coupling Gram.
struct GammaIndicators {
  std::pair<double, double> gamma_A{1.0, 1.0};  // pencil (A, Ahat)
  std::pair<double, double> gamma_R{1.0, 1.0};  // pencil (Stilde, Shat)
  std::pair<double, double> gamma_X{1.0, 1.0};  // pencil (Xtilde, Xhat)
  std::pair<double, double> gamma_E{0.0, 0.0};  // pencil (E, Xhat); min may be 0
  std::pair<double, double> gamma_K{1.0, 1.0};  // pencil (C Shat^{-1} C^T, Xhat)

  /// Recorded, not enforced: the regime the interval formulas assume.
  bool straddle_A = true;       // gamma_A.min < 1 < gamma_A.max
  bool one_in_R = true;         // 1 in [gamma_R.min, gamma_R.max]
  bool one_in_X = true;         // 1 in [gamma_X.min, gamma_X.max]
  bool a_max_below_2 = true;    // gamma_A.max < 2

  /// Provenance: the system had m == p with invertible C, enabling the
  /// refined negative-interval variants.
  bool square_c = false;

  void refresh_assumption_flags();
  std::vector<std::string> assumption_warnings() const;
};

/// Measured indicators from dense pencil computations.
/// gamma_E eigenvalues with magnitude below 1e-10 are clamped to exactly 0
/// so a rank-deficient E reports a crisp zero rather than solver noise.
GammaIndicators compute_indicators(const DoubleSaddleSystem& sys,
                                   const BlockPreconditioner& pc);

enum class Observation { Full, Boundary };

/// Quantities that the a-priori recipes cannot produce and must be measured:
/// the coupling Gram pair for full observation; the largest (3,3) residual
/// and approximation-quality eigenvalues for boundary observation.
struct MeasuredOverrides {
  std::optional<std::pair<double, double>> gamma_K;
  std::optional<double> gamma_E_max;
  std::optional<double> gamma_X_max;
};

/// A-priori indicator intervals for the discretized optimal-control systems,
/// driven by the Chebyshev factor eta(l) on [lmin, lmax] and the measured
/// multigrid-surrogate quality pair. Throws MissingMeasurementError when a
/// required override is absent.
GammaIndicators analytic_indicators_pdeco(int l, double beta, Observation obs,
                                          std::pair<double, double> amg_quality,
                                          const MeasuredOverrides& measured,
                                          double lmin = 0.5, double lmax = 2.0);

}  // namespace dsaddle
