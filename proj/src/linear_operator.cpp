// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/linear_operator.hpp"

#include <cmath>

#include "dsaddle/errors.hpp"

namespace dsaddle {

LinearOperator LinearOperator::identity(int dim) {
  return LinearOperator(
      dim, [](const Vector& x, Vector& y) { y = x; }, true, true);
}

void LinearOperator::apply(const Vector& x, Vector& y) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionError("operator apply size mismatch");
  fn_(x, y);
}

Vector LinearOperator::operator()(const Vector& x) const {
  Vector y;
  apply(x, y);
  return y;
}

DenseSymMatrix materialize_symmetric(const LinearOperator& op) {
  const int n = op.dim();
  DenseMatrix m(n, n);
  Vector e(n, 0.0), col;
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    e[j] = 0.0;
    for (int i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return DenseSymMatrix::symmetrized(m);
}

double symmetry_defect(const LinearOperator& op, Rng& rng, int probes) {
  const int n = op.dim();
  double worst = 0.0;
  Vector u(n), v(n), opu, opv;
  for (int t = 0; t < probes; ++t) {
    for (int i = 0; i < n; ++i) {
      u[i] = rng.normal();
      v[i] = rng.normal();
    }
    op.apply(u, opu);
    op.apply(v, opv);
    const double lhs = dot(u, opv), rhs = dot(opu, v);
    const double op_scale = std::max(norm2(opu) / std::max(norm2(u), 1e-300),
                                     norm2(opv) / std::max(norm2(v), 1e-300));
    const double denom = norm2(u) * norm2(v) * std::max(op_scale, 1e-300);
    worst = std::max(worst, std::abs(lhs - rhs) / denom);
  }
  return worst;
}

}  // namespace dsaddle
