// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/factor.hpp"

#include <cmath>

namespace dsaddle {

DenseMatrix cholesky_factor(const DenseSymMatrix& m, double pivot_tol_scale) {
  const int n = m.order();
  const double pivot_floor = pivot_tol_scale * m.max_diag();
  DenseMatrix lower(n, n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    const double* lj = lower.row(j);
    for (int k = 0; k < j; ++k) d -= lj[k] * lj[k];
    if (d <= pivot_floor) throw NotSpdError("cholesky pivot not positive");
    const double ljj = std::sqrt(d);
    lower(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      const double* li = lower.row(i);
      for (int k = 0; k < j; ++k) s -= li[k] * lj[k];
      lower(i, j) = s / ljj;
    }
  }
  return lower;
}

Vector forward_substitute(const DenseMatrix& lower, const Vector& b) {
  const int n = lower.rows();
  Vector x(b);
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    const double* li = lower.row(i);
    for (int k = 0; k < i; ++k) s -= li[k] * x[k];
    x[i] = s / li[i];
  }
  return x;
}

Vector backward_substitute(const DenseMatrix& lower, const Vector& b) {
  const int n = lower.rows();
  Vector x(b);
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= lower(k, i) * x[k];
    x[i] = s / lower(i, i);
  }
  return x;
}

Vector cholesky_solve(const DenseMatrix& lower, const Vector& b) {
  return backward_substitute(lower, forward_substitute(lower, b));
}

DenseSymMatrix cholesky_inverse(const DenseMatrix& lower) {
  const int n = lower.rows();
  DenseMatrix inv(n, n);
  Vector e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    Vector col = cholesky_solve(lower, e);
    e[j] = 0.0;
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return DenseSymMatrix::symmetrized(inv);
}

DenseMatrix solve_lower_left(const DenseMatrix& lower, const DenseMatrix& m) {
  const int n = lower.rows();
  const int cols = m.cols();
  DenseMatrix x = m;
  for (int i = 0; i < n; ++i) {
    const double* li = lower.row(i);
    double* xi = x.row(i);
    for (int k = 0; k < i; ++k) {
      const double lik = li[k];
      if (lik == 0.0) continue;
      const double* xk = x.row(k);
      for (int j = 0; j < cols; ++j) xi[j] -= lik * xk[j];
    }
    const double d = 1.0 / li[i];
    for (int j = 0; j < cols; ++j) xi[j] *= d;
  }
  return x;
}

}  // namespace dsaddle
