// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dsaddle/bounds.hpp"
#include "dsaddle/preconditioner.hpp"

namespace dsaddle {

/// One randomized verification case: target extremes for the three indicator
/// pencils, dimension rule, and structural switches.
struct SyntheticParams {
  std::pair<double, double> target_A{0.5, 1.5};
  std::pair<double, double> target_R{0.5, 1.5};
  std::pair<double, double> target_K{0.5, 1.5};
  int base_dim = 60;
  int dim_spread = 10;
  bool square_c = false;
  enum class EMode { Zero, RandomPsd };
  EMode e_mode = EMode::Zero;
  std::uint64_t seed = 0;
};

/// Random dense system whose indicator extremes hit the targets exactly:
/// Gaussian blocks, the (1,1) block shifted SPD by 1.01 |lambda_min|, and
/// each approximate block of the form (Z + c I)/s with (c, s) solved from
/// the two monotone endpoint equations. Retries a fresh draw (up to 10) when
/// a target assignment is infeasible for the drawn spectrum.
std::pair<DoubleSaddleSystem, BlockPreconditioner> generate_case(const SyntheticParams& p);

/// All generalized eigenvalues of (assembled system, assembled P), ascending.
std::vector<double> eigen_verify(const DoubleSaddleSystem& sys,
                                 const BlockPreconditioner& pc);

struct CaseRecord {
  SyntheticParams params;
  int n = 0, m = 0, p = 0;
  GammaIndicators indicators;
  std::vector<SpectralBounds> bounds;   // every applicable variant
  double eig_min_neg = 0.0, eig_max_neg = 0.0;
  double eig_min_pos = 0.0, eig_max_pos = 0.0;
  std::vector<bool> contained;          // per bounds entry
  bool all_contained = true;
  double worst_slack = 0.0;             // most negative distance outside an interval
  std::string failure;                  // non-empty if the case could not be run
};

struct GridReport {
  std::vector<CaseRecord> cases;
  int total_checks = 0;
  int failed_checks = 0;
  bool all_contained() const { return failed_checks == 0; }

  void write_csv(std::ostream& os) const;
};

/// Runs every (cell, repeat) combination, distributing cases across a worker
/// pool; deterministic for fixed seeds regardless of worker count.
GridReport run_grid(const std::vector<SyntheticParams>& grid, int repeats, int workers = 0);

/// The 3^6 target-combination grid used by the verification experiments.
std::vector<SyntheticParams> full_parameter_grid(bool square_c, SyntheticParams::EMode e_mode,
                                                 std::uint64_t seed_base);

}  // namespace dsaddle
