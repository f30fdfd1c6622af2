// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/inner_solvers.hpp"

#include <memory>

#include "dsaddle/errors.hpp"

namespace dsaddle {

LinearOperator build_shat_inverse(double beta, const ChebyshevSolver& cheb) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive");
  return cheb.as_operator(beta);
}

namespace {

LinearOperator sandwich_inverse(const SparseMatrix& m, const SurrogateAMG& amg,
                                double scale) {
  if (amg.dim() != m.rows() || m.rows() != m.cols())
    throw DimensionError("Xhat inverse block dimensions inconsistent");
  auto solver = std::make_shared<SurrogateAMG>(amg);
  auto mass = std::make_shared<const SparseMatrix>(m);
  return LinearOperator(
      m.rows(),
      [solver, mass, scale](const Vector& r, Vector& y) {
        Vector t1, t2;
        solver->solve(r, t1);
        mass->apply(t1, t2);
        solver->solve(t2, y);
        if (scale != 1.0)
          for (double& v : y) v *= scale;
      },
      true, true);
}

}  // namespace

LinearOperator build_xhat_inverse_full(double beta, const SparseMatrix& m,
                                       const SparseMatrix& l, const SurrogateAMG& amg) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive");
  (void)l;  // the surrogate already holds sqrt(beta) L + M
  return sandwich_inverse(m, amg, 4.0 / 3.0);
}

LinearOperator build_xhat_inverse_boundary(double beta, const SparseMatrix& m,
                                           const SparseMatrix& l, const SurrogateAMG& amg) {
  if (!(beta > 0.0)) throw ValidationError("beta must be positive");
  (void)l;  // the surrogate already holds sqrt(beta) L
  return sandwich_inverse(m, amg, 1.0);
}

}  // namespace dsaddle
