// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/minres.hpp"

#include <cmath>
#include <ostream>

#include "dsaddle/errors.hpp"

namespace dsaddle {

void IterationReport::write_csv(std::ostream& os) const {
  const bool with_bound = !bound_curve.empty();
  os << "k,rel_resid";
  if (with_bound) os << ",bound";
  os << "\n";
  for (std::size_t k = 0; k < history.size(); ++k) {
    os << k << "," << history[k];
    if (with_bound) os << "," << bound_curve[k];
    os << "\n";
  }
}

std::pair<Vector, IterationReport> minres_solve(const DoubleSaddleSystem& sys,
                                                const BlockPreconditioner& pc,
                                                double tol, int maxit) {
  if (sys.total() != pc.total()) throw DimensionError("system/preconditioner size mismatch");
  return minres_solve_operator([&sys](const Vector& x) { return sys.apply(x); },
                               [&pc](const Vector& r) { return apply_preconditioner(pc, r); },
                               sys.rhs, tol, maxit);
}

std::pair<Vector, IterationReport> minres_solve_operator(
    const std::function<Vector(const Vector&)>& apply_matrix,
    const std::function<Vector(const Vector&)>& apply_pinv, const Vector& rhs,
    double tol, int maxit) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  const int n = static_cast<int>(rhs.size());

  IterationReport report;
  report.tolerance = tol;
  report.history.push_back(1.0);

  Vector x(n, 0.0);
  Vector v = rhs;                                       // v_1 = b - A x0
  Vector z = apply_pinv(v);
  double gamma_sq = dot(z, v);
  if (gamma_sq < 0.0) throw NotSpdError("preconditioner produced a negative inner product");
  double gamma = std::sqrt(gamma_sq);
  const double gamma0 = gamma;
  if (gamma == 0.0) {
    report.converged = true;
    return {x, report};
  }

  Vector v_old(n, 0.0), w(n, 0.0), w_old(n, 0.0), zn(n), q(n), v_next(n);
  double gamma_prev = 1.0;  // never used while v_old == 0
  double eta = gamma;
  double s_prev = 0.0, s_cur = 0.0, c_prev = 1.0, c_cur = 1.0;

  for (int j = 1; j <= maxit; ++j) {
    for (int i = 0; i < n; ++i) zn[i] = z[i] / gamma;
    q = apply_matrix(zn);
    const double delta = dot(q, zn);

    for (int i = 0; i < n; ++i)
      v_next[i] = q[i] - (delta / gamma) * v[i] - (gamma / gamma_prev) * v_old[i];
    Vector z_next = apply_pinv(v_next);
    double gnext_sq = dot(z_next, v_next);
    bool broke = false;
    if (gnext_sq <= 0.0) {
      // Exact invariant-subspace termination up to roundoff.
      gnext_sq = 0.0;
      broke = true;
    }
    const double gamma_next = std::sqrt(gnext_sq);

    const double a0 = c_cur * delta - c_prev * s_cur * gamma;
    const double a1 = std::hypot(a0, gamma_next);
    const double a2 = s_cur * delta + c_prev * c_cur * gamma;
    const double a3 = s_prev * gamma;
    const double c_next = a0 / a1;
    const double s_next = gamma_next / a1;

    for (int i = 0; i < n; ++i) {
      const double wi = (zn[i] - a3 * w_old[i] - a2 * w[i]) / a1;
      w_old[i] = w[i];
      w[i] = wi;
      x[i] += c_next * eta * wi;
    }
    eta = -s_next * eta;

    report.iterations = j;
    report.history.push_back(std::abs(eta) / gamma0);
    if (report.history.back() <= tol) {
      report.converged = true;
      break;
    }
    if (broke || gamma_next <= 1e-300) {
      report.breakdown = true;
      report.converged = report.history.back() <= tol;
      break;
    }

    v_old.swap(v);
    v.swap(v_next);
    z.swap(z_next);
    gamma_prev = gamma;
    gamma = gamma_next;
    s_prev = s_cur;
    s_cur = s_next;
    c_prev = c_cur;
    c_cur = c_next;
  }

  return {x, report};
}

IterationReport attach_bound_curve(IterationReport report, const SpectralBounds& b) {
  report.bound_curve.resize(report.history.size());
  for (std::size_t k = 0; k < report.history.size(); ++k)
    report.bound_curve[k] = minres_bound(b, static_cast<int>(k));
  return report;
}

}  // namespace dsaddle
