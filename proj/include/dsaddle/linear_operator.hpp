// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <utility>

#include "dsaddle/dense.hpp"
#include "dsaddle/rng.hpp"
#include "dsaddle/vec.hpp"

namespace dsaddle {

/// A square linear map given only through its action on a vector, with
/// declared symmetry/definiteness. Applications must be re-entrant.
class LinearOperator {
 public:
  using ApplyFn = std::function<void(const Vector&, Vector&)>;

  LinearOperator() = default;
  LinearOperator(int dim, ApplyFn fn, bool symmetric, bool spd)
      : dim_(dim), symmetric_(symmetric), spd_(spd), fn_(std::move(fn)) {}

  static LinearOperator identity(int dim);

  int dim() const { return dim_; }
  bool symmetric() const { return symmetric_; }
  bool spd() const { return spd_; }

  void apply(const Vector& x, Vector& y) const;
  Vector operator()(const Vector& x) const;

 private:
  int dim_ = 0;
  bool symmetric_ = false, spd_ = false;
  ApplyFn fn_;
};

/// Dense materialization by application to identity columns; symmetrized.
DenseSymMatrix materialize_symmetric(const LinearOperator& op);

/// Largest |<u, Op v> - <Op u, v>| / (|u| |v| |Op v|-scale) over random
/// probes. Declared-symmetric operators should keep this near roundoff.
double symmetry_defect(const LinearOperator& op, Rng& rng, int probes = 8);

}  // namespace dsaddle
