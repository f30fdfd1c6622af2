// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dsaddle/eigen_sym.hpp"
#include "dsaddle/json_io.hpp"
#include "dsaddle/preconditioner.hpp"
#include "dsaddle/rng.hpp"
#include "oracles.hpp"

using namespace dsaddle;

namespace {

// The scalar worked example: A=[2], B=[1], C=[1], E=[0] with exact blocks.
DoubleSaddleSystem scalar_system() {
  return make_system(DenseSymMatrix{{2}}, DenseMatrix{{1}}, DenseMatrix{{1}},
                     DenseSymMatrix{{0}}, Vector{1, 0, 0});
}

BlockPreconditioner scalar_preconditioner() {
  auto scalar_op = [](double v) {
    return LinearOperator(
        1, [v](const Vector& x, Vector& y) { y = {v * x[0]}; }, true, true);
  };
  return make_preconditioner(scalar_op(0.5), scalar_op(2.0), scalar_op(0.5),
                             DenseMatrix{{1}}, DenseMatrix{{1}});
}

std::pair<DoubleSaddleSystem, BlockPreconditioner> random_system(Rng& rng, int n, int m,
                                                                 int p) {
  const DenseSymMatrix a = oracles::random_spd(rng, n);
  const DenseMatrix b = oracles::random_dense(rng, m, n);
  const DenseMatrix c = oracles::random_dense(rng, p, m);
  DenseSymMatrix e(p);
  Vector rhs(n + m + p);
  for (double& v : rhs) v = rng.normal();
  DoubleSaddleSystem sys = make_system(a, b, c, e, std::move(rhs));
  BlockPreconditioner pc = make_exact_preconditioner(sys);
  return {std::move(sys), std::move(pc)};
}

}  // namespace

TEST_CASE("full matrix assembly places blocks") {
  const DenseSymMatrix full = assemble_full_matrix(scalar_system());
  const double expected[3][3] = {{2, 1, 0}, {1, 0, 1}, {0, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(full(i, j) == expected[i][j]);
}

TEST_CASE("full matrix assembly is exactly symmetric") {
  Rng rng(7);
  auto [sys, pc] = random_system(rng, 6, 4, 2);
  const DenseSymMatrix full = assemble_full_matrix(sys);
  for (int i = 0; i < full.order(); ++i)
    for (int j = 0; j < full.order(); ++j) CHECK(full(i, j) == full(j, i));
}

TEST_CASE("full matrix assembly passes E through") {
  DoubleSaddleSystem sys = make_system(
      DenseSymMatrix::identity(2), DenseMatrix{{1, 0}, {0, 1}}, DenseMatrix{{1, 0}, {0, 1}},
      DenseSymMatrix::identity(2), Vector(6, 0.0));
  const DenseSymMatrix full = assemble_full_matrix(sys);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(full(4 + i, 4 + j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("validation rejects broken inputs") {
  CHECK_THROWS_AS(make_system(DenseSymMatrix{{1, 2}, {2, 1}}, DenseMatrix{{1, 0}},
                              DenseMatrix{{1}}, DenseSymMatrix{{0}}, Vector(4, 0.0)),
                  NotSpdError);
  // Rank-deficient C (zero row).
  CHECK_THROWS_AS(make_system(DenseSymMatrix::identity(2), DenseMatrix{{1, 0}, {0, 1}},
                              DenseMatrix{{0, 0}, {0, 0}}, DenseSymMatrix(2), Vector(6, 0.0)),
                  ValidationError);
  // n >= m >= p violated.
  CHECK_THROWS_AS(make_system(DenseSymMatrix::identity(1), DenseMatrix{{1}, {1}},
                              DenseMatrix{{1, 0}, {0, 1}}, DenseSymMatrix(2), Vector(5, 0.0)),
                  ValidationError);
}

TEST_CASE("identity blocks with zero coupling give the identity preconditioner") {
  const int n = 3, m = 2, p = 1;
  BlockPreconditioner pc = make_preconditioner(
      LinearOperator::identity(n), LinearOperator::identity(m), LinearOperator::identity(p),
      DenseMatrix(m, n), DenseMatrix(p, m));
  Rng rng(13);
  Vector r(n + m + p);
  for (double& v : r) v = rng.normal();
  const Vector w = apply_preconditioner(pc, r);
  for (int i = 0; i < n + m + p; ++i) CHECK(w[i] == doctest::Approx(r[i]).epsilon(1e-14));
}

TEST_CASE("scalar preconditioner apply matches the worked solve") {
  const Vector w = apply_preconditioner(scalar_preconditioner(), {1, 0, 0});
  CHECK(w[0] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("scalar preconditioner dense assembly matches the hand product") {
  const DenseSymMatrix p = assemble_preconditioner_dense(scalar_preconditioner());
  const double expected[3][3] = {{2, 1, 0}, {1, 1, -1}, {0, -1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(p(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-12));
}

TEST_CASE("apply solves P w = r against the dense assembly") {
  Rng rng(29);
  auto [sys, pc] = random_system(rng, 10, 6, 3);
  const DenseSymMatrix p = assemble_preconditioner_dense(pc);
  Vector r(sys.total());
  for (double& v : r) v = rng.normal();
  const Vector w = apply_preconditioner(pc, r);
  const Vector pw = p.apply(w);
  double defect = 0.0;
  for (int i = 0; i < sys.total(); ++i) defect += (pw[i] - r[i]) * (pw[i] - r[i]);
  CHECK(std::sqrt(defect) <= 1e-9 * norm2(r));
}

TEST_CASE("preconditioner application is linear") {
  Rng rng(31);
  auto [sys, pc] = random_system(rng, 8, 5, 3);
  Vector r1(sys.total()), r2(sys.total());
  for (double& v : r1) v = rng.normal();
  for (double& v : r2) v = rng.normal();
  const double alpha = 0.37, beta = -1.91;

  Vector combo(sys.total());
  for (int i = 0; i < sys.total(); ++i) combo[i] = alpha * r1[i] + beta * r2[i];
  const Vector w_combo = apply_preconditioner(pc, combo);
  const Vector w1 = apply_preconditioner(pc, r1);
  const Vector w2 = apply_preconditioner(pc, r2);
  const double scale = norm2(w_combo);
  for (int i = 0; i < sys.total(); ++i)
    CHECK(std::abs(w_combo[i] - alpha * w1[i] - beta * w2[i]) <= 1e-12 * scale);
}

TEST_CASE("block-diagonal case: zero coupling leaves the diagonal blocks") {
  Rng rng(41);
  const DenseSymMatrix ahat = oracles::random_spd(rng, 3);
  const DenseSymMatrix shat = oracles::random_spd(rng, 2);
  const DenseSymMatrix xhat = oracles::random_spd(rng, 2);
  auto solve_op = [](const DenseSymMatrix& m) {
    const DenseMatrix l = cholesky_factor(m);
    return LinearOperator(
        m.order(), [l](const Vector& x, Vector& y) { y = cholesky_solve(l, x); }, true, true);
  };
  BlockPreconditioner pc = make_preconditioner(solve_op(ahat), solve_op(shat), solve_op(xhat),
                                               DenseMatrix(2, 3), DenseMatrix(2, 2));
  const DenseSymMatrix p = assemble_preconditioner_dense(pc);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(p(i, j) == doctest::Approx(ahat(i, j)).epsilon(1e-10));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(p(3 + i, 3 + j) == doctest::Approx(shat(i, j)).epsilon(1e-10));
      CHECK(p(5 + i, 5 + j) == doctest::Approx(xhat(i, j)).epsilon(1e-10));
    }
  // Off-diagonal coupling is zero.
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 7; ++j) CHECK(std::abs(p(i, j)) <= 1e-12);
}

TEST_CASE("dense preconditioner assembly is SPD for SPD inner operators") {
  Rng rng(43);
  auto [sys, pc] = random_system(rng, 9, 6, 4);
  CHECK_NOTHROW(cholesky_factor(assemble_preconditioner_dense(pc)));
}

TEST_CASE("schur complements: identity and scalar cases") {
  {
    DoubleSaddleSystem sys = make_system(DenseSymMatrix::identity(2),
                                         DenseMatrix{{1, 0}, {0, 1}}, DenseMatrix{{1, 0}},
                                         DenseSymMatrix{{0}}, Vector(5, 0.0));
    const DenseSymMatrix s = schur_S_tilde(sys, LinearOperator::identity(2));
    CHECK(s(0, 0) == doctest::Approx(1.0));
    CHECK(s(1, 1) == doctest::Approx(1.0));
    CHECK(s(0, 1) == doctest::Approx(0.0));
  }
  {
    const DoubleSaddleSystem sys = scalar_system();
    const BlockPreconditioner pc = scalar_preconditioner();
    const DenseSymMatrix s = schur_S_tilde(sys, pc.a_inv);
    CHECK(s(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    const DenseSymMatrix x = schur_X_tilde(sys, pc.s_inv);
    CHECK(x(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("X tilde minus E stays positive semidefinite") {
  Rng rng(47);
  const int n = 8, m = 5, p = 3;
  const DenseSymMatrix a = oracles::random_spd(rng, n);
  const DenseMatrix b = oracles::random_dense(rng, m, n);
  const DenseMatrix c = oracles::random_dense(rng, p, m);
  const DenseMatrix g = oracles::random_dense(rng, p, p);
  const DenseSymMatrix e =
      DenseSymMatrix::symmetrized(oracles::naive_multiply(g.transposed(), g));
  Vector rhs(n + m + p, 0.0);
  DoubleSaddleSystem sys = make_system(a, b, c, e, std::move(rhs));
  BlockPreconditioner pc = make_exact_preconditioner(sys);
  const DenseSymMatrix x = schur_X_tilde(sys, pc.s_inv);
  DenseSymMatrix diff(p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= i; ++j) diff.set(i, j, x(i, j) - e(i, j));
  CHECK(sym_eigenvalues(diff).min >= -1e-10 * x.max_abs());
}

TEST_CASE("exact blocks with zero E give a two-point preconditioned spectrum") {
  Rng rng(53);
  auto [sys, pc] = random_system(rng, 10, 6, 3);
  const DenseSymMatrix full = assemble_full_matrix(sys);
  const DenseSymMatrix p_inv = assemble_preconditioner_inverse_dense(pc);
  const Spectrum s = gen_sym_eigenvalues_inverse(full, p_inv);
  for (double v : s.eigenvalues) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-8);
}

TEST_CASE("system JSON round-trip preserves blocks and rhs") {
  Rng rng(59);
  auto [sys, pc] = random_system(rng, 6, 4, 2);
  const json j = to_json(sys);
  const DoubleSaddleSystem back = system_from_json(j);
  CHECK(back.n == sys.n);
  CHECK(back.m == sys.m);
  CHECK(back.p == sys.p);
  for (int i = 0; i < sys.total(); ++i) CHECK(back.rhs[i] == sys.rhs[i]);
  const DenseMatrix b1 = sys.B.to_dense(), b2 = back.B.to_dense();
  for (int i = 0; i < b1.rows(); ++i)
    for (int j2 = 0; j2 < b1.cols(); ++j2) CHECK(b1(i, j2) == b2(i, j2));

  // Sparse blocks keep the csr tag.
  SparseMatrix::Builder sb(2, 2);
  sb.add(0, 0, 2.0);
  sb.add(1, 1, 3.0);
  const AnyMatrix sparse_block(sb.finalize());
  CHECK(to_json(sparse_block).at("format") == "csr");
  const AnyMatrix round = any_matrix_from_json(to_json(sparse_block));
  CHECK(round.is_sparse());
  CHECK(round.to_dense()(1, 1) == 3.0);
}
