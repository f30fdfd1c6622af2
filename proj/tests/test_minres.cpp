// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dsaddle/factor.hpp"
#include "dsaddle/minres.hpp"
#include "dsaddle/rng.hpp"
#include "oracles.hpp"

using namespace dsaddle;

namespace {

std::pair<DoubleSaddleSystem, BlockPreconditioner> exact_case(Rng& rng, int n, int m, int p) {
  const DenseSymMatrix a = oracles::random_spd(rng, n);
  const DenseMatrix b = oracles::random_dense(rng, m, n);
  const DenseMatrix c = oracles::random_dense(rng, p, m);
  Vector rhs(n + m + p);
  for (double& v : rhs) v = rng.normal();
  DoubleSaddleSystem sys = make_system(a, b, c, DenseSymMatrix(p), std::move(rhs));
  BlockPreconditioner pc = make_exact_preconditioner(sys);
  return {std::move(sys), std::move(pc)};
}

// A deliberately inexact preconditioner: every inner block scaled away from
// its exact value.
BlockPreconditioner detuned_preconditioner(const DoubleSaddleSystem& sys, double a_scale,
                                           double s_scale, double x_scale) {
  auto scaled_solve = [](const DenseSymMatrix& m, double scale) {
    const DenseMatrix l = cholesky_factor(m);
    return LinearOperator(
        m.order(),
        [l, scale](const Vector& x, Vector& y) {
          y = cholesky_solve(l, x);
          for (double& v : y) v *= scale;
        },
        true, true);
  };
  LinearOperator a_inv = scaled_solve(sys.A.to_dense_symmetric(), a_scale);
  const DenseSymMatrix stilde = schur_S_tilde(sys, a_inv);
  LinearOperator s_inv = scaled_solve(stilde, s_scale);
  const DenseSymMatrix xtilde = schur_X_tilde(sys, s_inv);
  LinearOperator x_inv = scaled_solve(xtilde, x_scale);
  return make_preconditioner(std::move(a_inv), std::move(s_inv), std::move(x_inv), sys.B,
                             sys.C);
}

}  // namespace

TEST_CASE("identity preconditioning of an SPD operator converges in one iteration") {
  Rng rng(3);
  const DenseSymMatrix a = oracles::random_spd(rng, 12);
  const DenseMatrix l = cholesky_factor(a);
  Vector rhs(12);
  for (double& v : rhs) v = rng.normal();

  auto [x, report] = minres_solve_operator(
      [&a](const Vector& v) { return a.apply(v); },
      [&l](const Vector& r) { return cholesky_solve(l, r); }, rhs);
  CHECK(report.converged);
  CHECK(report.iterations == 1);
  const Vector exact = cholesky_solve(l, rhs);
  for (int i = 0; i < 12; ++i) CHECK(x[i] == doctest::Approx(exact[i]).epsilon(1e-8));
}

TEST_CASE("two-point preconditioned spectrum converges within three iterations") {
  Rng rng(7);
  for (int t = 0; t < 3; ++t) {
    auto [sys, pc] = exact_case(rng, 12, 8, 5);
    auto [x, report] = minres_solve(sys, pc, 1e-10, 50);
    CHECK(report.converged);
    CHECK(report.iterations <= 3);
    CHECK(report.history[std::min<std::size_t>(2, report.history.size() - 1)] <= 1e-10);

    const Vector residual = sys.apply(x);
    double err = 0.0;
    for (int i = 0; i < sys.total(); ++i)
      err += (residual[i] - sys.rhs[i]) * (residual[i] - sys.rhs[i]);
    CHECK(std::sqrt(err) <= 1e-7 * norm2(sys.rhs));
  }
}

TEST_CASE("residual history is monotone and the solution solves the system") {
  Rng rng(11);
  auto [sys, pc_exact] = exact_case(rng, 14, 9, 6);
  const BlockPreconditioner pc = detuned_preconditioner(sys, 0.7, 1.3, 0.8);

  auto [x, report] = minres_solve(sys, pc, 1e-10, 500);
  CHECK(report.converged);
  CHECK(report.iterations > 3);
  for (std::size_t k = 1; k < report.history.size(); ++k)
    CHECK(report.history[k] <= report.history[k - 1] + 1e-14);

  const Vector ax = sys.apply(x);
  double err = 0.0;
  for (int i = 0; i < sys.total(); ++i) err += (ax[i] - sys.rhs[i]) * (ax[i] - sys.rhs[i]);
  CHECK(std::sqrt(err) <= 1e-6 * norm2(sys.rhs));
}

TEST_CASE("measured residuals stay under the attached envelope") {
  Rng rng(13);
  auto [sys, pc_exact] = exact_case(rng, 12, 8, 5);
  const BlockPreconditioner pc = detuned_preconditioner(sys, 0.85, 1.2, 0.9);

  const GammaIndicators g = compute_indicators(sys, pc);
  const SpectralBounds bounds = bounds_e_zero(g);

  auto [x, report] = minres_solve(sys, pc, 1e-10, 500);
  REQUIRE(report.converged);
  const IterationReport with_curve = attach_bound_curve(std::move(report), bounds);
  REQUIRE(with_curve.bound_curve.size() == with_curve.history.size());
  CHECK(with_curve.bound_curve[0] == doctest::Approx(2.0));
  CHECK(with_curve.bound_curve[1] == doctest::Approx(2.0));
  for (std::size_t k = 0; k < with_curve.history.size(); ++k)
    CHECK(with_curve.history[k] <= with_curve.bound_curve[k] + 1e-12);
}

TEST_CASE("envelope collapses at step two for the symmetric two-point spectrum") {
  Rng rng(17);
  auto [sys, pc] = exact_case(rng, 10, 7, 4);
  const GammaIndicators g = compute_indicators(sys, pc);
  const SpectralBounds bounds = bounds_e_zero(g);

  auto [x, report] = minres_solve(sys, pc, 1e-10, 50);
  const IterationReport with_curve = attach_bound_curve(std::move(report), bounds);
  REQUIRE(with_curve.history.size() >= 3);
  CHECK(with_curve.bound_curve[2] <= 1e-7);
  CHECK(with_curve.history[2] <= 1e-10);
}

TEST_CASE("per-iteration CSV layout") {
  IterationReport report;
  report.history = {1.0, 0.5, 0.25};
  std::ostringstream plain;
  report.write_csv(plain);
  CHECK(plain.str() == "k,rel_resid\n0,1\n1,0.5\n2,0.25\n");

  report.bound_curve = {2.0, 2.0, 1.0};
  std::ostringstream with_bound;
  report.write_csv(with_bound);
  CHECK(with_bound.str() == "k,rel_resid,bound\n0,1,2\n1,0.5,2\n2,0.25,1\n");
}

TEST_CASE("non-convergence is reported through the flag") {
  Rng rng(19);
  auto [sys, pc_exact] = exact_case(rng, 12, 8, 5);
  const BlockPreconditioner pc = detuned_preconditioner(sys, 0.5, 2.0, 0.4);
  auto [x, report] = minres_solve(sys, pc, 1e-14, 3);
  CHECK_FALSE(report.converged);
  CHECK(report.iterations == 3);
}
