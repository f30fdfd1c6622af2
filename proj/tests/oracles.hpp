// SPDX-License-Identifier: Apache-2.0
//
// Independent test oracles. Everything here recomputes expected values by a
// route different from the implementation under test: inertia counts and
// bisection for eigenvalues, naive formulas for roots, Gaussian elimination
// for small solves.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dsaddle/dense.hpp"
#include "dsaddle/rng.hpp"

namespace oracles {

using dsaddle::DenseMatrix;
using dsaddle::DenseSymMatrix;
using dsaddle::Vector;

inline DenseMatrix naive_multiply(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

/// Number of negative pivots of (m - shift I) under unpivoted LDL^T; by
/// Sylvester's law this counts eigenvalues below the shift. Throws on a
/// (measure-zero) pivot breakdown so the caller can nudge the shift.
inline int negative_pivot_count(const DenseSymMatrix& m, double shift) {
  const int n = m.order();
  DenseMatrix l(n, n);
  std::vector<double> d(n, 0.0);
  const double tiny = 1e-13 * (m.max_abs() + std::abs(shift) + 1.0);
  for (int j = 0; j < n; ++j) {
    double dj = m(j, j) - shift;
    for (int k = 0; k < j; ++k) dj -= l(j, k) * l(j, k) * d[k];
    if (std::abs(dj) < tiny) throw std::runtime_error("ldlt pivot breakdown");
    d[j] = dj;
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j) - (j == i ? shift : 0.0);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k) * d[k];
      l(i, j) = s / dj;
    }
  }
  int neg = 0;
  for (double v : d) neg += (v < 0.0);
  return neg;
}

inline int negative_count_robust(const DenseSymMatrix& m, double shift) {
  double eps = 0.0;
  const double scale = m.max_abs() + std::abs(shift) + 1.0;
  for (int tries = 0; tries < 8; ++tries) {
    try {
      return negative_pivot_count(m, shift + eps);
    } catch (const std::runtime_error&) {
      eps = (eps == 0.0) ? 1e-9 * scale : 2.0 * eps;
    }
  }
  throw std::runtime_error("inertia count failed after nudging");
}

/// All eigenvalues by inertia bisection between Gershgorin bounds: an
/// eigensolver that shares no code path with the QL implementation.
inline std::vector<double> bisection_eigenvalues(const DenseSymMatrix& m, double tol = 1e-10) {
  const int n = m.order();
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) radius += std::abs(m(i, j));
    lo = std::min(lo, m(i, i) - radius);
    hi = std::max(hi, m(i, i) + radius);
  }
  lo -= 1.0;
  hi += 1.0;
  const double scaled_tol = tol * std::max(std::abs(lo), std::abs(hi));

  std::vector<double> eigs(n);
  for (int k = 1; k <= n; ++k) {
    double a = lo, b = hi;
    while (b - a > scaled_tol) {
      const double mid = 0.5 * (a + b);
      if (negative_count_robust(m, mid) >= k)
        b = mid;
      else
        a = mid;
    }
    eigs[k - 1] = 0.5 * (a + b);
  }
  return eigs;
}

/// Plain-formula quadratic roots of x^2 + b x + c, ascending.
inline std::pair<double, double> quadratic_formula(double b, double c) {
  const double disc = b * b - 4.0 * c;
  const double sq = std::sqrt(disc);
  const double r1 = (-b - sq) / 2.0, r2 = (-b + sq) / 2.0;
  return {std::min(r1, r2), std::max(r1, r2)};
}

/// Coefficients (c2, c1, c0) of (x - r1)(x - r2)(x - r3).
inline std::array<double, 3> cubic_from_roots(double r1, double r2, double r3) {
  return {-(r1 + r2 + r3), r1 * r2 + r1 * r3 + r2 * r3, -(r1 * r2 * r3)};
}

/// Dense solve by Gaussian elimination with partial pivoting.
inline Vector gauss_solve(DenseMatrix a, Vector b) {
  const int n = a.rows();
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      std::swap(b[col], b[piv]);
    }
    for (int i = col + 1; i < n; ++i) {
      const double f = a(i, col) / a(col, col);
      for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      b[i] -= f * b[col];
    }
  }
  Vector x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

inline DenseSymMatrix random_spd(dsaddle::Rng& rng, int n, double shift = 1.0) {
  DenseMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  DenseMatrix gtg = naive_multiply(g.transposed(), g);
  DenseSymMatrix out = DenseSymMatrix::symmetrized(gtg);
  for (int i = 0; i < n; ++i) out.set(i, i, out(i, i) + shift * n);
  return out;
}

inline DenseMatrix random_dense(dsaddle::Rng& rng, int rows, int cols) {
  DenseMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.normal();
  return g;
}

}  // namespace oracles
