// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/saddle_system.hpp"

#include <cmath>

#include "dsaddle/eigen_sym.hpp"
#include "dsaddle/errors.hpp"
#include "dsaddle/factor.hpp"

namespace dsaddle {

int AnyMatrix::rows() const {
  return std::visit([](const auto& m) -> int {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DenseSymMatrix>)
      return m.order();
    else
      return m.rows();
  }, m_);
}

int AnyMatrix::cols() const {
  return std::visit([](const auto& m) -> int {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DenseSymMatrix>)
      return m.order();
    else
      return m.cols();
  }, m_);
}

void AnyMatrix::apply(const Vector& x, Vector& y) const {
  std::visit([&](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, SparseMatrix>)
      m.apply(x, y);
    else
      y = m.apply(x);
  }, m_);
}

void AnyMatrix::apply_transpose(const Vector& x, Vector& y) const {
  std::visit([&](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, SparseMatrix>)
      m.apply_transpose(x, y);
    else if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DenseSymMatrix>)
      y = m.apply(x);
    else
      y = m.apply_transpose(x);
  }, m_);
}

Vector AnyMatrix::apply(const Vector& x) const {
  Vector y;
  apply(x, y);
  return y;
}

DenseMatrix AnyMatrix::to_dense() const {
  return std::visit([](const auto& m) -> DenseMatrix {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DenseMatrix>)
      return m;
    else
      return m.to_dense();
  }, m_);
}

DenseSymMatrix AnyMatrix::to_dense_symmetric() const {
  if (const auto* s = std::get_if<DenseSymMatrix>(&m_)) return *s;
  return DenseSymMatrix::symmetrized(to_dense());
}

double AnyMatrix::max_abs() const {
  return std::visit([](const auto& m) { return m.max_abs(); }, m_);
}

Vector DoubleSaddleSystem::apply(const Vector& x) const {
  if (static_cast<int>(x.size()) != total()) throw DimensionError("system matvec size mismatch");
  const Vector x1(x.begin(), x.begin() + n);
  const Vector x2(x.begin() + n, x.begin() + n + m);
  const Vector x3(x.begin() + n + m, x.end());

  Vector y(total(), 0.0);
  Vector t;

  A.apply(x1, t);                                     // y1 = A x1 + B^T x2
  for (int i = 0; i < n; ++i) y[i] = t[i];
  B.apply_transpose(x2, t);
  for (int i = 0; i < n; ++i) y[i] += t[i];

  B.apply(x1, t);                                     // y2 = B x1 + C^T x3
  for (int i = 0; i < m; ++i) y[n + i] = t[i];
  C.apply_transpose(x3, t);
  for (int i = 0; i < m; ++i) y[n + i] += t[i];

  C.apply(x2, t);                                     // y3 = C x2 + E x3
  for (int i = 0; i < p; ++i) y[n + m + i] = t[i];
  E.apply(x3, t);
  for (int i = 0; i < p; ++i) y[n + m + i] += t[i];

  return y;
}

namespace {

// Gershgorin lower bound on the smallest eigenvalue of a symmetric block.
double gershgorin_min(const AnyMatrix& m) {
  if (const SparseMatrix* s = m.sparse()) {
    Vector lo(s->rows(), 0.0);
    for (int i = 0; i < s->rows(); ++i) {
      double diag = 0.0, off = 0.0;
      for (int k = s->row_offsets()[i]; k < s->row_offsets()[i + 1]; ++k) {
        if (s->col_indices()[k] == i)
          diag = s->values()[k];
        else
          off += std::abs(s->values()[k]);
      }
      lo[i] = diag - off;
    }
    double worst = lo.empty() ? 0.0 : lo[0];
    for (double v : lo) worst = std::min(worst, v);
    return worst;
  }
  const DenseMatrix d = m.to_dense();
  double worst = 0.0;
  for (int i = 0; i < d.rows(); ++i) {
    double off = 0.0;
    for (int j = 0; j < d.cols(); ++j)
      if (j != i) off += std::abs(d(i, j));
    const double v = d(i, i) - off;
    worst = (i == 0) ? v : std::min(worst, v);
  }
  return worst;
}

// Full row rank via the smallest eigenvalue of the Gram matrix M M^T,
// reusing the symmetric eigensolver. Square sparse blocks take the cheaper
// Cholesky route first.
void check_full_row_rank(const AnyMatrix& m, const char* name) {
  if (m.rows() == m.cols() && m.is_sparse()) {
    try {
      BandCholesky chol(*m.sparse());
      return;
    } catch (const NotSpdError&) {
      // Not SPD says nothing about rank; fall through to the Gram check.
    }
  }
  const DenseMatrix d = m.to_dense();
  const DenseMatrix g = d.multiply(d.transposed());
  const Spectrum s = sym_eigenvalues(DenseSymMatrix::symmetrized(g));
  if (!(s.min > 1e-10 * s.max))
    throw ValidationError(std::string(name) + " does not have full row rank");
}

}  // namespace

void DoubleSaddleSystem::validate() const {
  if (!(n >= m && m >= p && p >= 1))
    throw ValidationError("block dimensions must satisfy n >= m >= p >= 1");
  if (A.rows() != n || A.cols() != n || B.rows() != m || B.cols() != n ||
      C.rows() != p || C.cols() != m || E.rows() != p || E.cols() != p)
    throw DimensionError("block dimensions are inconsistent");
  if (static_cast<int>(rhs.size()) != total())
    throw DimensionError("rhs length must be n+m+p");

  // A SPD by Cholesky.
  if (const SparseMatrix* s = A.sparse()) {
    BandCholesky chol(*s);
  } else {
    cholesky_factor(A.to_dense_symmetric());
  }

  // E symmetric positive semidefinite. A nonnegative Gershgorin bound is
  // conclusive; otherwise fall back on the dense spectrum.
  const double e_scale = E.max_abs();
  if (gershgorin_min(E) < -1e-10 * e_scale) {
    const Spectrum es = sym_eigenvalues(E.to_dense_symmetric());
    if (es.min < -1e-10 * e_scale)
      throw ValidationError("E must be positive semidefinite");
  }

  check_full_row_rank(B, "B");
  check_full_row_rank(C, "C");
}

DoubleSaddleSystem make_system(AnyMatrix a, AnyMatrix b, AnyMatrix c, AnyMatrix e,
                               Vector rhs, bool validate) {
  DoubleSaddleSystem sys;
  sys.n = a.rows();
  sys.m = b.rows();
  sys.p = c.rows();
  sys.A = std::move(a);
  sys.B = std::move(b);
  sys.C = std::move(c);
  sys.E = std::move(e);
  sys.rhs = std::move(rhs);
  if (validate) sys.validate();
  return sys;
}

DenseSymMatrix assemble_full_matrix(const DoubleSaddleSystem& sys) {
  const int total = sys.total();
  if (total > kDenseBudget) throw BudgetError("dense assembly exceeds order budget");
  const int n = sys.n, m = sys.m;

  DenseMatrix full(total, total);
  const DenseMatrix a = sys.A.to_dense();
  const DenseMatrix b = sys.B.to_dense();
  const DenseMatrix c = sys.C.to_dense();
  const DenseMatrix e = sys.E.to_dense();

  for (int i = 0; i < sys.n; ++i)
    for (int j = 0; j < sys.n; ++j) full(i, j) = a(i, j);
  for (int i = 0; i < sys.m; ++i)
    for (int j = 0; j < sys.n; ++j) {
      full(n + i, j) = b(i, j);
      full(j, n + i) = b(i, j);
    }
  for (int i = 0; i < sys.p; ++i)
    for (int j = 0; j < sys.m; ++j) {
      full(n + m + i, n + j) = c(i, j);
      full(n + j, n + m + i) = c(i, j);
    }
  for (int i = 0; i < sys.p; ++i)
    for (int j = 0; j < sys.p; ++j) full(n + m + i, n + m + j) = e(i, j);

  return DenseSymMatrix::symmetrized(full);
}

}  // namespace dsaddle
