// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/chebyshev.hpp"

#include <cmath>

#include "dsaddle/eigen_sym.hpp"
#include "dsaddle/errors.hpp"
#include "dsaddle/polynomials.hpp"

namespace dsaddle {

double eta_factor(int l, double lmin, double lmax) {
  if (l < 1) throw ValidationError("eta_factor needs l >= 1");
  if (!(lmin > 0.0)) throw ValidationError("eta_factor needs lmin > 0");
  if (lmax - lmin <= 1e-14) throw DegenerateIntervalError("spectral interval is degenerate");
  return 1.0 / chebyshev_T(l, (lmax + lmin) / (lmax - lmin));
}

ChebyshevSolver::ChebyshevSolver(SparseMatrix m, int iterations, double lmin, double lmax)
    : mat_(std::make_shared<const SparseMatrix>(std::move(m))),
      iters_(iterations),
      lmin_(lmin),
      lmax_(lmax) {
  if (mat_->rows() != mat_->cols()) throw DimensionError("chebyshev target must be square");
  if (iters_ < 1) throw ValidationError("chebyshev iteration count must be >= 1");
  inv_diag_ = mat_->diagonal();
  for (double& d : inv_diag_) {
    if (d <= 0.0) throw NotSpdError("chebyshev target has a nonpositive diagonal entry");
    d = 1.0 / d;
  }
}

ChebyshevSolver ChebyshevSolver::with_analytic_interval(SparseMatrix m, int iterations) {
  return ChebyshevSolver(std::move(m), iterations, 0.5, 2.0);
}

ChebyshevSolver ChebyshevSolver::with_measured_interval(SparseMatrix m, int iterations) {
  // Extremes of diag(M)^{-1} M through the symmetric similar form
  // D^{-1/2} M D^{-1/2}.
  Vector dinv_sqrt = m.diagonal();
  for (double& d : dinv_sqrt) {
    if (d <= 0.0) throw NotSpdError("chebyshev target has a nonpositive diagonal entry");
    d = 1.0 / std::sqrt(d);
  }
  DenseSymMatrix w(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int k = m.row_offsets()[i]; k < m.row_offsets()[i + 1]; ++k) {
      const int j = m.col_indices()[k];
      if (j <= i) w.set(i, j, m.values()[k] * dinv_sqrt[i] * dinv_sqrt[j]);
    }
  const Spectrum s = sym_eigenvalues(w);
  return ChebyshevSolver(std::move(m), iterations, s.min, s.max);
}

void ChebyshevSolver::apply(const Vector& r, Vector& x) const {
  const int n = mat_->rows();
  if (static_cast<int>(r.size()) != n) throw DimensionError("chebyshev apply size mismatch");

  const double theta = 0.5 * (lmax_ + lmin_);
  const double delta = 0.5 * (lmax_ - lmin_);

  if (delta <= 1e-14 * theta) {
    // Collapsed interval: plain Richardson steps with the optimal weight,
    // exact in one step when the preconditioned spectrum is the single
    // point theta.
    x.assign(n, 0.0);
    Vector res(n);
    for (int k = 0; k < iters_; ++k) {
      mat_->apply(x, res);
      for (int i = 0; i < n; ++i) res[i] = r[i] - res[i];
      for (int i = 0; i < n; ++i) x[i] += inv_diag_[i] * res[i] / theta;
    }
    return;
  }

  const double sigma = theta / delta;

  // Three-term recurrence on the iterates. With rho_k the values of the
  // shifted Chebyshev polynomial at sigma, the error after step k is the
  // optimal polynomial T_k((theta - t)/delta) / T_k(sigma) in the Jacobi-
  // preconditioned matrix.
  x.assign(n, 0.0);
  for (int i = 0; i < n; ++i) x[i] = inv_diag_[i] * r[i] / theta;
  if (iters_ == 1) return;

  Vector x_prev(n, 0.0), res(n), x_next(n);
  double rho_prev = 1.0, rho = sigma;
  for (int k = 1; k < iters_; ++k) {
    const double rho_next = 2.0 * sigma * rho - rho_prev;
    mat_->apply(x, res);
    for (int i = 0; i < n; ++i) res[i] = r[i] - res[i];
    const double c1 = 2.0 * sigma * rho / rho_next;
    const double c2 = rho_prev / rho_next;
    const double c3 = 2.0 * rho / (delta * rho_next);
    for (int i = 0; i < n; ++i)
      x_next[i] = c1 * x[i] - c2 * x_prev[i] + c3 * inv_diag_[i] * res[i];
    x_prev.swap(x);
    x.swap(x_next);
    rho_prev = rho;
    rho = rho_next;
  }
}

Vector ChebyshevSolver::apply(const Vector& r) const {
  Vector x;
  apply(r, x);
  return x;
}

LinearOperator ChebyshevSolver::as_operator(double scale) const {
  auto self = std::make_shared<ChebyshevSolver>(*this);
  return LinearOperator(
      dim(),
      [self, scale](const Vector& r, Vector& y) {
        self->apply(r, y);
        if (scale != 1.0)
          for (double& v : y) v *= scale;
      },
      true, true);
}

}  // namespace dsaddle
