// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <vector>

#include "dsaddle/bounds.hpp"
#include "dsaddle/preconditioner.hpp"

namespace dsaddle {

/// Convergence record of one minimum-residual solve. history[k] is the
/// preconditioner-norm residual at iteration k relative to iteration 0, so
/// history[0] == 1. When attached, bound_curve[k] is the analytic two-interval
/// envelope at the same k.
struct IterationReport {
  int iterations = 0;
  std::vector<double> history;
  bool converged = false;
  bool breakdown = false;
  double tolerance = 0.0;
  std::vector<double> bound_curve;

  /// Per-iteration CSV: k, rel_resid [, bound].
  void write_csv(std::ostream& os) const;
};

/// Preconditioned MINRES on the block system with the fixed SPD
/// preconditioner. Convergence is measured in the preconditioned residual
/// norm, the quantity the analytic envelope controls; a Lanczos breakdown is
/// reported, not fatal (the best iterate is returned). Non-convergence within
/// maxit is reported through the converged flag.
std::pair<Vector, IterationReport> minres_solve(const DoubleSaddleSystem& sys,
                                                const BlockPreconditioner& pc,
                                                double tol = 1e-10, int maxit = 5000);

/// Same recurrence on a caller-supplied symmetric operator and SPD
/// preconditioner solve.
std::pair<Vector, IterationReport> minres_solve_operator(
    const std::function<Vector(const Vector&)>& apply_matrix,
    const std::function<Vector(const Vector&)>& apply_pinv, const Vector& rhs,
    double tol = 1e-10, int maxit = 5000);

/// Report augmented with the analytic envelope at every recorded iteration.
IterationReport attach_bound_curve(IterationReport report, const SpectralBounds& b);

}  // namespace dsaddle
