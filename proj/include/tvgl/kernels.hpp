#pragma once

#include <vector>

#include "tvgl/admm.hpp"

// Per-timestamp ADMM phases. Each phase writes disjoint slots of the state,
// so the OpenMP path is bit-identical to the serial reference path.
namespace tvgl::kernels {

/// Theta_i = prox_logdet_trace of the average of the consensus copies.
void theta_step(AdmmState& state, const EmpiricalCovSequence& covs, const SolverConfig& cfg,
                std::vector<ProxWorkspace>& workspaces);

/// Z0 soft threshold at lambda / rho, then each consensus pair (and the
/// anchor pair, if any). Returns the number of inner solves that hit their cap.
int z_step(AdmmState& state, const PenaltySpec& penalty, const SolverConfig& cfg);

/// Scaled dual ascent U += Theta - Z.
void dual_step(AdmmState& state, const SolverConfig& cfg);

/// Worker count the OpenMP backend will use for `cfg`.
int worker_count(const SolverConfig& cfg);

}  // namespace tvgl::kernels
