// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "dsaddle/indicators.hpp"
#include "dsaddle/inner_solvers.hpp"
#include "dsaddle/mesh.hpp"
#include "dsaddle/saddle_system.hpp"

namespace dsaddle {

/// Which Chebyshev spectral interval parameterizes the block approximations.
enum class SpectralIntervalMode { Analytic, Measured };

/// The discretized optimal-control system in (control, adjoint, state) block
/// order: A = beta M, B = M, C = L, and E = M (full observation) or the
/// boundary mass (boundary observation). The rhs carries the desired-state
/// load in the third block.
DoubleSaddleSystem build_ocp_system(const Mesh& mesh, const FemMatrices& fem, double beta,
                                    Observation obs);

struct OcpPreconditioner {
  BlockPreconditioner pc;
  ChebyshevSolver cheb;               // shared by Ahat^{-1} and Shat^{-1}
  SurrogateAMG amg;
  std::pair<double, double> amg_quality;
};

/// Ahat^{-1} = (1/beta) Cheb(M, l), Shat^{-1} = beta Cheb(M, l), and Xhat^{-1}
/// from the observation-specific sandwich construction.
OcpPreconditioner build_ocp_preconditioner(const Mesh& mesh, const FemMatrices& fem,
                                           double beta, Observation obs, int cheb_iters,
                                           AmgMode amg_mode, int amg_sweeps = 2,
                                           SpectralIntervalMode interval_mode =
                                               SpectralIntervalMode::Analytic);

/// The measured quantities the analytic indicator recipe asks for, computed
/// from dense pencils: the coupling Gram pair (full observation) or the
/// largest (3,3)-residual and Xhat-quality eigenvalues (boundary).
MeasuredOverrides measure_overrides(const DoubleSaddleSystem& sys, const FemMatrices& fem,
                                    double beta, Observation obs,
                                    const OcpPreconditioner& ocp_pc);

}  // namespace dsaddle
