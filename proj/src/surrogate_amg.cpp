// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/surrogate_amg.hpp"

#include <charconv>

#include "dsaddle/eigen_sym.hpp"
#include "dsaddle/errors.hpp"
#include "dsaddle/factor.hpp"

namespace dsaddle {

AmgMode parse_amg_mode(const std::string& text, int* sweeps) {
  if (sweeps) *sweeps = 2;
  if (text == "exact") return AmgMode::ExactCholesky;
  if (text == "two-grid") return AmgMode::TwoGrid;
  if (text.rfind("sgs", 0) == 0) {
    if (text.size() > 3) {
      if (text[3] != ':') throw ValidationError("bad amg mode: " + text);
      int k = 0;
      const auto* begin = text.data() + 4;
      const auto* end = text.data() + text.size();
      if (std::from_chars(begin, end, k).ec != std::errc{} || k < 1)
        throw ValidationError("bad sgs sweep count in amg mode: " + text);
      if (sweeps) *sweeps = k;
    }
    return AmgMode::SymGaussSeidel;
  }
  throw ValidationError("unknown amg mode: " + text);
}

SurrogateAMG::SurrogateAMG(SparseMatrix z, AmgMode mode, int sweeps,
                           std::optional<SparseMatrix> prolongation)
    : z_(std::make_shared<const SparseMatrix>(std::move(z))), mode_(mode), sweeps_(sweeps) {
  if (z_->rows() != z_->cols()) throw DimensionError("amg target must be square");
  if (sweeps_ < 1) throw ValidationError("amg sweep count must be >= 1");
  switch (mode_) {
    case AmgMode::ExactCholesky:
      direct_ = std::make_shared<const BandCholesky>(*z_);
      break;
    case AmgMode::SymGaussSeidel:
      break;
    case AmgMode::TwoGrid: {
      if (!prolongation) throw ValidationError("two-grid mode needs a prolongation");
      if (prolongation->rows() != z_->rows())
        throw DimensionError("prolongation row count must match the target");
      prolongation_ = std::make_shared<const SparseMatrix>(std::move(*prolongation));
      // Galerkin coarse matrix P^T Z P.
      const SparseMatrix pt = prolongation_->transposed();
      const int nc = prolongation_->cols();
      SparseMatrix::Builder b(nc, nc);
      Vector col(z_->rows()), zc, pc;
      for (int j = 0; j < nc; ++j) {
        Vector ej(nc, 0.0);
        ej[j] = 1.0;
        prolongation_->apply(ej, col);
        z_->apply(col, zc);
        pt.apply(zc, pc);
        for (int i = 0; i < nc; ++i)
          if (pc[i] != 0.0) b.add(i, j, pc[i]);
      }
      coarse_ = std::make_shared<const SparseMatrix>(b.finalize());
      coarse_solve_ = std::make_shared<const BandCholesky>(*coarse_);
      break;
    }
  }
}

// One symmetric Gauss-Seidel sweep on Z x = b starting from x.
void SurrogateAMG::sgs_sweep(const Vector& b, Vector& x) const {
  const SparseMatrix& z = *z_;
  const int n = z.rows();
  // Forward.
  for (int i = 0; i < n; ++i) {
    double s = b[i], diag = 0.0;
    for (int k = z.row_offsets()[i]; k < z.row_offsets()[i + 1]; ++k) {
      const int j = z.col_indices()[k];
      if (j == i)
        diag = z.values()[k];
      else
        s -= z.values()[k] * x[j];
    }
    x[i] = s / diag;
  }
  // Backward.
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i], diag = 0.0;
    for (int k = z.row_offsets()[i]; k < z.row_offsets()[i + 1]; ++k) {
      const int j = z.col_indices()[k];
      if (j == i)
        diag = z.values()[k];
      else
        s -= z.values()[k] * x[j];
    }
    x[i] = s / diag;
  }
}

void SurrogateAMG::two_grid_cycle(const Vector& b, Vector& x) const {
  const SparseMatrix& z = *z_;
  sgs_sweep(b, x);
  Vector res(z.rows()), tmp;
  z.apply(x, res);
  for (std::size_t i = 0; i < res.size(); ++i) res[i] = b[i] - res[i];
  prolongation_->apply_transpose(res, tmp);
  const Vector corr = coarse_solve_->solve(tmp);
  prolongation_->apply(corr, tmp);
  for (std::size_t i = 0; i < tmp.size(); ++i) x[i] += tmp[i];
  sgs_sweep(b, x);
}

void SurrogateAMG::solve(const Vector& b, Vector& x) const {
  if (static_cast<int>(b.size()) != dim()) throw DimensionError("amg solve size mismatch");
  switch (mode_) {
    case AmgMode::ExactCholesky:
      direct_->solve(b, x);
      return;
    case AmgMode::SymGaussSeidel:
      x.assign(b.size(), 0.0);
      for (int k = 0; k < sweeps_; ++k) sgs_sweep(b, x);
      return;
    case AmgMode::TwoGrid:
      x.assign(b.size(), 0.0);
      for (int k = 0; k < sweeps_; ++k) two_grid_cycle(b, x);
      return;
  }
}

Vector SurrogateAMG::solve(const Vector& b) const {
  Vector x;
  solve(b, x);
  return x;
}

LinearOperator SurrogateAMG::as_operator() const {
  auto self = std::make_shared<SurrogateAMG>(*this);
  return LinearOperator(
      dim(), [self](const Vector& b, Vector& x) { self->solve(b, x); }, true, true);
}

std::pair<double, double> SurrogateAMG::measure_quality(const SparseMatrix& m) const {
  if (mode_ == AmgMode::ExactCholesky) return {1.0, 1.0};
  if (m.rows() != dim()) throw DimensionError("quality measurement size mismatch");
  const int n = dim();

  // Implicit matrix of the solve: Zhat = (solve operator)^{-1}.
  const DenseSymMatrix solve_dense = materialize_symmetric(as_operator());
  const DenseSymMatrix zhat = cholesky_inverse(cholesky_factor(solve_dense));

  const BandCholesky m_solve(m);
  auto sandwich = [&](const DenseSymMatrix& g) {
    // G M^{-1} G for symmetric G.
    DenseMatrix minv_g(n, n);
    Vector col(n), sol;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) col[i] = g(i, j);
      m_solve.solve(col, sol);
      for (int i = 0; i < n; ++i) minv_g(i, j) = sol[i];
    }
    return DenseSymMatrix::symmetrized(g.to_dense().multiply(minv_g));
  };

  const DenseSymMatrix exact = sandwich(DenseSymMatrix::symmetrized(z_->to_dense()));
  const DenseSymMatrix approx = sandwich(zhat);
  const Spectrum s = gen_sym_eigenvalues(exact, approx);
  return {s.min, s.max};
}

}  // namespace dsaddle
