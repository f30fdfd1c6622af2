// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "dsaddle/eigen_sym.hpp"
#include "dsaddle/json_io.hpp"
#include "dsaddle/minres.hpp"
#include "dsaddle/ocp.hpp"
#include "oracles.hpp"

using namespace dsaddle;

TEST_CASE("mesh node and element counts") {
  CHECK(build_mesh(4).node_count() == 289);
  CHECK(build_mesh(5).node_count() == 1089);
  CHECK(build_mesh(6).node_count() == 4225);
  const Mesh m = build_mesh(3);
  CHECK(static_cast<int>(m.elements.size()) == 2 * 64);
  CHECK(static_cast<int>(m.boundary_nodes.size()) == 4 * 8);
  CHECK_THROWS_AS(build_mesh(1), ValidationError);
  CHECK_THROWS_AS(build_mesh(8), ValidationError);
}

TEST_CASE("element areas are h^2/2") {
  const Mesh m = build_mesh(3);
  for (const auto& el : m.elements) {
    const double x0 = m.node_x(el[0]), y0 = m.node_y(el[0]);
    const double x1 = m.node_x(el[1]), y1 = m.node_y(el[1]);
    const double x2 = m.node_x(el[2]), y2 = m.node_y(el[2]);
    const double area = 0.5 * std::abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0));
    CHECK(area == doctest::Approx(0.5 * m.h * m.h).epsilon(1e-12));
  }
}

TEST_CASE("mass matrix integrates the constant to the domain area") {
  const FemMatrices fem = assemble_matrices(build_mesh(4));
  double sum = 0.0;
  for (double v : fem.M.values()) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stiffness matrix annihilates constants") {
  const FemMatrices fem = assemble_matrices(build_mesh(4));
  const Vector ones(fem.K.rows(), 1.0);
  Vector out;
  fem.K.apply(ones, out);
  for (double v : out) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("jacobi-preconditioned mass spectrum lies in [1/2, 2]") {
  for (int level : {3, 4}) {
    const FemMatrices fem = assemble_matrices(build_mesh(level));
    Vector dinv_sqrt = fem.M.diagonal();
    for (double& v : dinv_sqrt) v = 1.0 / std::sqrt(v);
    const int nn = fem.M.rows();
    DenseSymMatrix w(nn);
    for (int i = 0; i < nn; ++i)
      for (int k = fem.M.row_offsets()[i]; k < fem.M.row_offsets()[i + 1]; ++k) {
        const int j = fem.M.col_indices()[k];
        if (j <= i) w.set(i, j, fem.M.values()[k] * dinv_sqrt[i] * dinv_sqrt[j]);
      }
    const Spectrum s = sym_eigenvalues(w);
    CHECK(s.min >= 0.5 - 1e-12);
    CHECK(s.max <= 2.0 + 1e-12);
  }
}

TEST_CASE("boundary mass totals the boundary length with the right rank") {
  const Mesh mesh = build_mesh(3);
  const FemMatrices fem = assemble_matrices(mesh);
  double sum = 0.0;
  for (double v : fem.Mb.values()) sum += v;
  CHECK(sum == doctest::Approx(4.0).epsilon(1e-12));

  const Spectrum s = sym_eigenvalues(DenseSymMatrix::symmetrized(fem.Mb.to_dense()));
  int positive = 0;
  for (double v : s.eigenvalues) positive += (v > 1e-12);
  CHECK(positive == 4 * 8);
  CHECK(s.min >= -1e-14);
}

TEST_CASE("L is SPD and the blocks wire into an 867-dimensional system") {
  const Mesh mesh = build_mesh(4);
  const FemMatrices fem = assemble_matrices(mesh);
  CHECK_NOTHROW(BandCholesky(fem.L));
  const DoubleSaddleSystem sys = build_ocp_system(mesh, fem, 1e-2, Observation::Full);
  CHECK(sys.total() == 867);
  CHECK(sys.n == 289);
}

TEST_CASE("full-observation load recovers the centered desired state") {
  const Mesh mesh = build_mesh(4);
  const FemMatrices fem = assemble_matrices(mesh);
  const DoubleSaddleSystem sys = build_ocp_system(mesh, fem, 1e-2, Observation::Full);
  Vector load(sys.p);
  for (int i = 0; i < sys.p; ++i) load[i] = sys.rhs[sys.n + sys.m + i];
  const BandCholesky msolve(fem.M);
  const Vector yhat = msolve.solve(load);
  int center = -1;
  for (int i = 0; i < mesh.node_count(); ++i)
    if (mesh.node_x(i) == 0.5 && mesh.node_y(i) == 0.5) center = i;
  REQUIRE(center >= 0);
  CHECK(yhat[center] == doctest::Approx(1.0).epsilon(1e-12));
  // The first two rhs blocks are zero.
  for (int i = 0; i < sys.n + sys.m; ++i) CHECK(sys.rhs[i] == 0.0);
}

TEST_CASE("boundary-observation load is supported on boundary nodes") {
  const Mesh mesh = build_mesh(3);
  const FemMatrices fem = assemble_matrices(mesh);
  const DoubleSaddleSystem sys = build_ocp_system(mesh, fem, 1e-1, Observation::Boundary);
  std::vector<bool> on_boundary(mesh.node_count(), false);
  for (int b : mesh.boundary_nodes) on_boundary[b] = true;
  double interior = 0.0, boundary = 0.0;
  for (int i = 0; i < sys.p; ++i) {
    const double v = std::abs(sys.rhs[sys.n + sys.m + i]);
    (on_boundary[i] ? boundary : interior) += v;
  }
  CHECK(interior == 0.0);
  CHECK(boundary > 0.0);
}

TEST_CASE("observation mode steers the (3,3) block definiteness") {
  const Mesh mesh = build_mesh(3);
  const FemMatrices fem = assemble_matrices(mesh);
  const double beta = 1e-2;

  const DoubleSaddleSystem full = build_ocp_system(mesh, fem, beta, Observation::Full);
  const OcpPreconditioner pc_full = build_ocp_preconditioner(
      mesh, fem, beta, Observation::Full, 5, AmgMode::ExactCholesky);
  const GammaIndicators g_full = compute_indicators(full, pc_full.pc);
  CHECK(g_full.gamma_E.first > 0.0);

  const DoubleSaddleSystem bnd = build_ocp_system(mesh, fem, 1e-1, Observation::Boundary);
  const OcpPreconditioner pc_bnd = build_ocp_preconditioner(
      mesh, fem, 1e-1, Observation::Boundary, 5, AmgMode::ExactCholesky);
  const GammaIndicators g_bnd = compute_indicators(bnd, pc_bnd.pc);
  CHECK(g_bnd.gamma_E.first == 0.0);
  CHECK(g_bnd.gamma_E.second > 0.0);
}

TEST_CASE("preconditioned iteration converges on the coarse benchmark") {
  const Mesh mesh = build_mesh(3);
  const FemMatrices fem = assemble_matrices(mesh);
  const double beta = 1e-2;
  const DoubleSaddleSystem sys = build_ocp_system(mesh, fem, beta, Observation::Full);
  const OcpPreconditioner ocp = build_ocp_preconditioner(
      mesh, fem, beta, Observation::Full, 5, AmgMode::ExactCholesky);
  auto [x, report] = minres_solve(sys, ocp.pc, 1e-10, 500);
  CHECK(report.converged);
  CHECK(report.iterations < 60);

  const Vector ax = sys.apply(x);
  double err = 0.0, scale = 0.0;
  for (int i = 0; i < sys.total(); ++i) {
    err += (ax[i] - sys.rhs[i]) * (ax[i] - sys.rhs[i]);
    scale += sys.rhs[i] * sys.rhs[i];
  }
  CHECK(std::sqrt(err) <= 1e-6 * std::sqrt(scale));
}

TEST_CASE("larger chebyshev budgets drive the indicators toward one") {
  const Mesh mesh = build_mesh(3);
  const FemMatrices fem = assemble_matrices(mesh);
  const double beta = 1e-2;
  const DoubleSaddleSystem sys = build_ocp_system(mesh, fem, beta, Observation::Full);

  double prev_spread = HUGE_VAL;
  for (int l : {1, 4, 10}) {
    const OcpPreconditioner ocp = build_ocp_preconditioner(
        mesh, fem, beta, Observation::Full, l, AmgMode::ExactCholesky);
    const GammaIndicators g = compute_indicators(sys, ocp.pc);
    const double spread = std::max(std::abs(g.gamma_A.second - 1.0),
                                   std::abs(1.0 - g.gamma_A.first));
    CHECK(spread < prev_spread);
    prev_spread = spread;
  }
  CHECK(prev_spread < 1e-4);
}

TEST_CASE("lanczos pencil extremes agree with the dense route") {
  const Mesh mesh = build_mesh(4);
  const FemMatrices fem = assemble_matrices(mesh);
  for (Observation obs : {Observation::Full, Observation::Boundary}) {
    const double beta = (obs == Observation::Full) ? 1e-2 : 1e-1;
    const DoubleSaddleSystem sys = build_ocp_system(mesh, fem, beta, obs);
    const OcpPreconditioner ocp =
        build_ocp_preconditioner(mesh, fem, beta, obs, 3, AmgMode::ExactCholesky);
    const auto& pc = ocp.pc;

    auto apply_gram = [&pc](const Vector& x, Vector& y) {
      Vector t1, t2;
      pc.C.apply_transpose(x, t1);
      pc.s_inv.apply(t1, t2);
      pc.C.apply(t2, y);
    };
    auto apply_xinv = [&pc](const Vector& x, Vector& y) { pc.x_inv.apply(x, y); };
    auto apply_xtilde = [&](const Vector& x, Vector& y) {
      Vector t;
      apply_gram(x, t);
      sys.E.apply(x, y);
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += t[i];
    };

    const DenseSymMatrix x_inv = materialize_symmetric(pc.x_inv);
    const DenseSymMatrix xtilde = schur_X_tilde(sys, pc.s_inv);
    const Spectrum dense_x = gen_sym_eigenvalues_inverse(xtilde, x_inv);
    const auto [est_lo, est_hi] = pencil_extremes_lanczos(apply_xtilde, apply_xinv, sys.p);
    CHECK(est_hi == doctest::Approx(dense_x.max).epsilon(1e-6));
    CHECK(est_lo == doctest::Approx(dense_x.min).epsilon(1e-4));

    if (obs == Observation::Full) {
      DenseSymMatrix gram(sys.p);
      const DenseSymMatrix e_dense = sys.E.to_dense_symmetric();
      for (int i = 0; i < sys.p; ++i)
        for (int j = 0; j <= i; ++j) gram.set(i, j, xtilde(i, j) - e_dense(i, j));
      const Spectrum dense_k = gen_sym_eigenvalues_inverse(gram, x_inv);
      const auto [klo, khi] = pencil_extremes_lanczos(apply_gram, apply_xinv, sys.p);
      CHECK(khi == doctest::Approx(dense_k.max).epsilon(1e-6));
      CHECK(klo == doctest::Approx(dense_k.min).epsilon(1e-6));
    }
  }
}

TEST_CASE("ocp systems serialize with csr tags") {
  const Mesh mesh = build_mesh(3);
  const FemMatrices fem = assemble_matrices(mesh);
  const DoubleSaddleSystem sys = build_ocp_system(mesh, fem, 1e-2, Observation::Full);
  const json j = to_json(sys);
  CHECK(j.at("A").at("format") == "csr");
  const DoubleSaddleSystem back = system_from_json(j);
  CHECK(back.total() == sys.total());
  CHECK(back.A.is_sparse());
}
