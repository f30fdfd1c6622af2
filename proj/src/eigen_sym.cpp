// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/eigen_sym.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "dsaddle/rng.hpp"
#include "dsaddle/vec.hpp"

namespace dsaddle {

namespace {

// Householder reduction of a symmetric matrix (lower triangle of `a`) to
// tridiagonal form; eigenvalues only, so the orthogonal transform is not
// accumulated. On return d holds the diagonal and e the subdiagonal
// (e[0] unused).
void householder_tridiagonalize(std::vector<double>& a, int n,
                                std::vector<double>& d, std::vector<double>& e) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0, scl = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scl += std::abs(at(i, k));
      if (scl == 0.0) {
        e[i] = at(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          at(i, k) /= scl;
          h += at(i, k) * at(i, k);
        }
        double f = at(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scl * g;
        h -= f * g;
        at(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
          for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
          e[j] = g / h;
          f += e[j] * at(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = at(i, j);
          const double gj = e[j] - hh * f;
          e[j] = gj;
          for (int k = 0; k <= j; ++k) at(j, k) -= f * e[k] + gj * at(i, k);
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) d[i] = at(i, i);
}

// Implicit QL with Wilkinson shifts on a tridiagonal (d, e); e[0] unused on
// input. Eigenvalues land in d, unsorted.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, int n,
                    int max_sweeps) {
  const double eps = std::numeric_limits<double>::epsilon();

  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_sweeps)
          throw NoConvergenceError("tridiagonal QL: eigenvalue exceeded the sweep cap");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

Spectrum sym_eigenvalues(const DenseSymMatrix& m, int max_sweeps) {
  const int n = m.order();
  std::vector<double> a(m.data());
  std::vector<double> d(n, 0.0), e(n, 0.0);
  if (n == 1) return Spectrum::from_sorted({a[0]});
  householder_tridiagonalize(a, n, d, e);
  tridiagonal_ql(d, e, n, max_sweeps);
  return Spectrum::from_sorted(std::move(d));
}

Spectrum gen_sym_eigenvalues(const DenseSymMatrix& a, const DenseSymMatrix& b) {
  if (a.order() != b.order()) throw DimensionError("pencil order mismatch");
  const DenseMatrix lower = cholesky_factor(b);
  const DenseMatrix t1 = solve_lower_left(lower, a.to_dense());
  const DenseMatrix t2 = solve_lower_left(lower, t1.transposed());
  return sym_eigenvalues(DenseSymMatrix::symmetrized(t2));
}

Spectrum gen_sym_eigenvalues_inverse(const DenseSymMatrix& a, const DenseSymMatrix& w) {
  if (a.order() != w.order()) throw DimensionError("pencil order mismatch");
  const DenseMatrix lower = cholesky_factor(w);
  const DenseMatrix t1 = a.to_dense().multiply(lower);
  const DenseMatrix t2 = lower.transposed().multiply(t1);
  return sym_eigenvalues(DenseSymMatrix::symmetrized(t2));
}

std::pair<double, double> pencil_extremes_lanczos(
    const std::function<void(const Vector&, Vector&)>& apply_w,
    const std::function<void(const Vector&, Vector&)>& apply_b, int dim, int steps,
    std::uint64_t seed) {
  Rng rng(seed);
  steps = std::min(steps, dim);

  // W-orthonormal basis vectors and their W images, kept for full
  // reorthogonalization (the step counts here are small).
  std::vector<Vector> basis, w_images;
  Vector v(dim), u(dim), w(dim), wu(dim);
  for (double& x : v) x = rng.normal();
  apply_w(v, u);
  const double wnorm = std::sqrt(std::max(dot(v, u), 0.0));
  if (wnorm == 0.0) return {0.0, 0.0};  // W vanished on the probe
  for (int i = 0; i < dim; ++i) {
    v[i] /= wnorm;
    u[i] /= wnorm;
  }

  std::vector<double> alpha, beta;
  auto ritz_extremes = [&]() -> std::pair<double, double> {
    const int k = static_cast<int>(alpha.size());
    DenseSymMatrix tri(k);
    for (int i = 0; i < k; ++i) {
      tri.set(i, i, alpha[i]);
      if (i + 1 < k) tri.set(i, i + 1, beta[i]);
    }
    const Spectrum s = sym_eigenvalues(tri);
    return {s.min, s.max};
  };

  // The extremes converge long before the Krylov space is exhausted; once
  // they stagnate the residual is pure roundoff and continuing would inject
  // spurious directions, so stop on stagnation (or on breakdown).
  std::pair<double, double> est{0.0, 0.0};
  double scale_seen = 0.0;
  int stagnant = 0;
  for (int j = 0; j < steps; ++j) {
    basis.push_back(v);
    w_images.push_back(u);
    apply_b(u, w);                     // w = B W v_j
    const double a = dot(w, u);
    alpha.push_back(a);
    scale_seen = std::max(scale_seen, std::abs(a));
    // Two orthogonalization passes: one leaves residual components that the
    // small post-convergence norm would re-amplify.
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const double coeff = dot(w, w_images[i]);
        axpy(-coeff, basis[i], w);
      }
    apply_w(w, wu);
    const double b2 = dot(w, wu);

    const std::pair<double, double> prev = est;
    est = ritz_extremes();
    if (j >= 3) {
      const bool settled =
          std::abs(est.first - prev.first) <= 1e-11 * std::max(1.0, std::abs(est.first)) &&
          std::abs(est.second - prev.second) <= 1e-11 * std::max(1.0, std::abs(est.second));
      stagnant = settled ? stagnant + 1 : 0;
      if (stagnant >= 2) break;
    }

    if (!(b2 > 0.0)) break;
    const double b = std::sqrt(b2);
    if (b <= 1e-12 * scale_seen) break;
    beta.push_back(b);
    for (int i = 0; i < dim; ++i) {
      v[i] = w[i] / b;
      u[i] = wu[i] / b;
    }
  }
  return est;
}

}  // namespace dsaddle
