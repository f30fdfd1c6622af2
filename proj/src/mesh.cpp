// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/mesh.hpp"

#include <cmath>

#include "dsaddle/errors.hpp"

namespace dsaddle {

Mesh build_mesh(int level) {
  if (level < 2 || level > 7) throw ValidationError("mesh level must be in 2..7");
  Mesh mesh;
  mesh.level = level;
  const int cells = 1 << level;
  mesh.nodes_per_side = cells + 1;
  mesh.h = 1.0 / cells;

  const int nps = mesh.nodes_per_side;
  auto node = [nps](int i, int j) { return j * nps + i; };

  mesh.elements.reserve(2 * cells * cells);
  for (int j = 0; j < cells; ++j)
    for (int i = 0; i < cells; ++i) {
      // Split along the (i,j) -> (i+1,j+1) diagonal.
      mesh.elements.push_back({node(i, j), node(i + 1, j), node(i + 1, j + 1)});
      mesh.elements.push_back({node(i, j), node(i + 1, j + 1), node(i, j + 1)});
    }

  for (int i = 0; i < nps; ++i) mesh.boundary_nodes.push_back(node(i, 0));
  for (int j = 1; j < cells; ++j) {
    mesh.boundary_nodes.push_back(node(0, j));
    mesh.boundary_nodes.push_back(node(cells, j));
  }
  for (int i = 0; i < nps; ++i) mesh.boundary_nodes.push_back(node(i, cells));
  return mesh;
}

FemMatrices assemble_matrices(const Mesh& mesh) {
  const int nn = mesh.node_count();
  SparseMatrix::Builder mass(nn, nn), stiff(nn, nn), bmass(nn, nn);

  for (const auto& el : mesh.elements) {
    const double x0 = mesh.node_x(el[0]), y0 = mesh.node_y(el[0]);
    const double x1 = mesh.node_x(el[1]), y1 = mesh.node_y(el[1]);
    const double x2 = mesh.node_x(el[2]), y2 = mesh.node_y(el[2]);
    const double det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
    const double area = 0.5 * std::abs(det);

    // P1 mass: area/12 * (1 + delta_ij).
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        mass.add(el[a], el[b], area / 12.0 * (a == b ? 2.0 : 1.0));

    // P1 stiffness from the gradient coefficients
    // grad phi_a = (beta_a, gamma_a) / det.
    const double beta[3] = {y1 - y2, y2 - y0, y0 - y1};
    const double gamma[3] = {x2 - x1, x0 - x2, x1 - x0};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        stiff.add(el[a], el[b], (beta[a] * beta[b] + gamma[a] * gamma[b]) / (4.0 * area));
  }

  // 1D P1 mass on each boundary edge, placed at full-ordering indices.
  const int cells = 1 << mesh.level;
  const int nps = mesh.nodes_per_side;
  auto node = [nps](int i, int j) { return j * nps + i; };
  auto add_edge = [&](int a, int b) {
    bmass.add(a, a, mesh.h / 3.0);
    bmass.add(b, b, mesh.h / 3.0);
    bmass.add(a, b, mesh.h / 6.0);
    bmass.add(b, a, mesh.h / 6.0);
  };
  for (int i = 0; i < cells; ++i) {
    add_edge(node(i, 0), node(i + 1, 0));
    add_edge(node(i, cells), node(i + 1, cells));
    add_edge(node(0, i), node(0, i + 1));
    add_edge(node(cells, i), node(cells, i + 1));
  }

  FemMatrices fem;
  fem.M = mass.finalize();
  fem.K = stiff.finalize();
  fem.L = fem.K.plus(fem.M);
  fem.Mb = bmass.finalize();
  return fem;
}

SparseMatrix coarse_prolongation(const Mesh& fine) {
  if (fine.level < 3) throw ValidationError("prolongation needs a level >= 3 mesh");
  const int nf = fine.nodes_per_side;
  const int nc = (nf - 1) / 2 + 1;
  SparseMatrix::Builder b(nf * nf, nc * nc);
  auto fnode = [nf](int i, int j) { return j * nf + i; };
  auto cnode = [nc](int i, int j) { return j * nc + i; };

  for (int j = 0; j < nf; ++j)
    for (int i = 0; i < nf; ++i) {
      const int fi = fnode(i, j);
      const int ci = i / 2, cj = j / 2;
      const bool ei = (i % 2) != 0, ej = (j % 2) != 0;
      if (!ei && !ej) {
        b.add(fi, cnode(ci, cj), 1.0);
      } else if (ei && !ej) {
        b.add(fi, cnode(ci, cj), 0.5);
        b.add(fi, cnode(ci + 1, cj), 0.5);
      } else if (!ei && ej) {
        b.add(fi, cnode(ci, cj), 0.5);
        b.add(fi, cnode(ci, cj + 1), 0.5);
      } else {
        // Cell center lies on the coarse (ci,cj) -> (ci+1,cj+1) diagonal.
        b.add(fi, cnode(ci, cj), 0.5);
        b.add(fi, cnode(ci + 1, cj + 1), 0.5);
      }
    }
  return b.finalize();
}

}  // namespace dsaddle
