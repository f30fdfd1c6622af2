// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/preconditioner.hpp"

#include <memory>

#include "dsaddle/errors.hpp"
#include "dsaddle/factor.hpp"

namespace dsaddle {

void BlockPreconditioner::validate() const {
  if (a_inv.dim() != n || s_inv.dim() != m || x_inv.dim() != p)
    throw DimensionError("preconditioner operator dimensions inconsistent");
  if (B.rows() != m || B.cols() != n || C.rows() != p || C.cols() != m)
    throw DimensionError("preconditioner coupling block dimensions inconsistent");
  if (!a_inv.spd() || !s_inv.spd() || !x_inv.spd())
    throw ValidationError("inverse block operators must be declared SPD");
}

BlockPreconditioner make_preconditioner(LinearOperator a_inv, LinearOperator s_inv,
                                        LinearOperator x_inv, AnyMatrix b, AnyMatrix c) {
  BlockPreconditioner pc;
  pc.n = a_inv.dim();
  pc.m = s_inv.dim();
  pc.p = x_inv.dim();
  pc.a_inv = std::move(a_inv);
  pc.s_inv = std::move(s_inv);
  pc.x_inv = std::move(x_inv);
  pc.B = std::move(b);
  pc.C = std::move(c);
  pc.validate();
  return pc;
}

namespace {

LinearOperator dense_solve_operator(const DenseSymMatrix& m) {
  auto lower = std::make_shared<DenseMatrix>(cholesky_factor(m));
  return LinearOperator(
      m.order(),
      [lower](const Vector& x, Vector& y) { y = cholesky_solve(*lower, x); },
      true, true);
}

}  // namespace

BlockPreconditioner make_exact_preconditioner(const DoubleSaddleSystem& sys) {
  LinearOperator a_inv = dense_solve_operator(sys.A.to_dense_symmetric());
  const DenseSymMatrix stilde = schur_S_tilde(sys, a_inv);
  LinearOperator s_inv = dense_solve_operator(stilde);
  const DenseSymMatrix xtilde = schur_X_tilde(sys, s_inv);
  LinearOperator x_inv = dense_solve_operator(xtilde);
  return make_preconditioner(std::move(a_inv), std::move(s_inv), std::move(x_inv),
                             sys.B, sys.C);
}

Vector apply_preconditioner(const BlockPreconditioner& pc, const Vector& r) {
  if (static_cast<int>(r.size()) != pc.total())
    throw DimensionError("preconditioner apply size mismatch");
  const int n = pc.n, m = pc.m, p = pc.p;
  const Vector r1(r.begin(), r.begin() + n);
  const Vector r2(r.begin() + n, r.begin() + n + m);
  const Vector r3(r.begin() + n + m, r.end());

  // Forward pass with P_L, fused with the diagonal scaling and the
  // transposed back substitution so only inverse actions appear:
  //   u1 = Ahat^{-1} r1
  //   u2 = Shat^{-1} (B u1 - r2)
  //   u3 = Xhat^{-1} (r3 - C u2)
  //   w3 = u3
  //   w2 = Shat^{-1} (C^T u3) - u2
  //   w1 = u1 - Ahat^{-1} (B^T w2)
  Vector t, u1, u2, u3, w1, w2;
  pc.a_inv.apply(r1, u1);

  pc.B.apply(u1, t);
  for (int i = 0; i < m; ++i) t[i] -= r2[i];
  pc.s_inv.apply(t, u2);

  pc.C.apply(u2, t);
  for (int i = 0; i < p; ++i) t[i] = r3[i] - t[i];
  pc.x_inv.apply(t, u3);

  pc.C.apply_transpose(u3, t);
  pc.s_inv.apply(t, w2);
  for (int i = 0; i < m; ++i) w2[i] -= u2[i];

  pc.B.apply_transpose(w2, t);
  pc.a_inv.apply(t, w1);

  Vector w(pc.total());
  for (int i = 0; i < n; ++i) w[i] = u1[i] - w1[i];
  for (int i = 0; i < m; ++i) w[n + i] = w2[i];
  for (int i = 0; i < p; ++i) w[n + m + i] = u3[i];
  return w;
}

DenseSymMatrix assemble_preconditioner_inverse_dense(const BlockPreconditioner& pc) {
  const int total = pc.total();
  if (total > kDenseBudget) throw BudgetError("dense assembly exceeds order budget");
  DenseMatrix inv(total, total);
  Vector e(total, 0.0);
  for (int j = 0; j < total; ++j) {
    e[j] = 1.0;
    const Vector col = apply_preconditioner(pc, e);
    e[j] = 0.0;
    for (int i = 0; i < total; ++i) inv(i, j) = col[i];
  }
  return DenseSymMatrix::symmetrized(inv);
}

DenseSymMatrix assemble_preconditioner_dense(const BlockPreconditioner& pc) {
  const DenseSymMatrix inv = assemble_preconditioner_inverse_dense(pc);
  DenseSymMatrix p(inv.order());
  try {
    p = cholesky_inverse(cholesky_factor(inv));
    cholesky_factor(p);
  } catch (const NotSpdError&) {
    throw NotSpdError("assembled preconditioner is not SPD: broken inner operator");
  }
  return p;
}

DenseSymMatrix schur_S_tilde(const DoubleSaddleSystem& sys, const LinearOperator& a_inv) {
  if (sys.total() > kDenseBudget) throw BudgetError("dense assembly exceeds order budget");
  const int n = sys.n, m = sys.m;
  // A^{-1} B^T column by column, then B * that.
  DenseMatrix ainv_bt(n, m);
  Vector e(m, 0.0), col;
  for (int j = 0; j < m; ++j) {
    e[j] = 1.0;
    Vector btj;
    sys.B.apply_transpose(e, btj);
    e[j] = 0.0;
    a_inv.apply(btj, col);
    for (int i = 0; i < n; ++i) ainv_bt(i, j) = col[i];
  }
  DenseMatrix s(m, m);
  for (int j = 0; j < m; ++j) {
    Vector cj(n);
    for (int i = 0; i < n; ++i) cj[i] = ainv_bt(i, j);
    Vector bcj;
    sys.B.apply(cj, bcj);
    for (int i = 0; i < m; ++i) s(i, j) = bcj[i];
  }
  return DenseSymMatrix::symmetrized(s);
}

DenseSymMatrix schur_X_tilde(const DoubleSaddleSystem& sys, const LinearOperator& s_inv) {
  if (sys.total() > kDenseBudget) throw BudgetError("dense assembly exceeds order budget");
  const int m = sys.m, p = sys.p;
  DenseMatrix sinv_ct(m, p);
  Vector e(p, 0.0), col;
  for (int j = 0; j < p; ++j) {
    e[j] = 1.0;
    Vector ctj;
    sys.C.apply_transpose(e, ctj);
    e[j] = 0.0;
    s_inv.apply(ctj, col);
    for (int i = 0; i < m; ++i) sinv_ct(i, j) = col[i];
  }
  DenseMatrix x(p, p);
  for (int j = 0; j < p; ++j) {
    Vector cj(m);
    for (int i = 0; i < m; ++i) cj[i] = sinv_ct(i, j);
    Vector ccj;
    sys.C.apply(cj, ccj);
    for (int i = 0; i < p; ++i) x(i, j) = ccj[i];
  }
  DenseSymMatrix xt = DenseSymMatrix::symmetrized(x);
  const DenseSymMatrix e_dense = sys.E.to_dense_symmetric();
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= i; ++j) xt.set(i, j, xt(i, j) + e_dense(i, j));
  return xt;
}

}  // namespace dsaddle
