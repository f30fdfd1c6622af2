// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "dsaddle/sparse.hpp"

namespace dsaddle {

/// Uniform P1 triangulation of the unit square at mesh size h = 2^{-level}:
/// (2^level + 1)^2 lexicographically ordered nodes, two right triangles per
/// cell, 2 * 4^level elements in total.
struct Mesh {
  int level = 0;
  int nodes_per_side = 0;
  double h = 0.0;
  std::vector<std::array<int, 3>> elements;  // node indices, consistent orientation
  std::vector<int> boundary_nodes;

  int node_count() const { return nodes_per_side * nodes_per_side; }
  double node_x(int idx) const { return h * (idx % nodes_per_side); }
  double node_y(int idx) const { return h * (idx / nodes_per_side); }
};

/// Levels 2..7 are supported.
Mesh build_mesh(int level);

struct FemMatrices {
  SparseMatrix M;   // mass
  SparseMatrix K;   // stiffness (kernel = constants)
  SparseMatrix L;   // K + M
  SparseMatrix Mb;  // boundary mass on the full node ordering
};

FemMatrices assemble_matrices(const Mesh& mesh);

/// Piecewise-linear prolongation from the level-1 coarse grid onto this
/// mesh's nodes (edge midpoints average their two coarse endpoints, with the
/// cell-center fine node sitting on the coarse diagonal).
SparseMatrix coarse_prolongation(const Mesh& fine);

}  // namespace dsaddle
