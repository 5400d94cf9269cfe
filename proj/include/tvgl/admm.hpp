#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tvgl/common.hpp"
#include "tvgl/config.hpp"
#include "tvgl/data.hpp"
#include "tvgl/penalty.hpp"
#include "tvgl/prox.hpp"

namespace tvgl {

/// Estimated precision matrices, one per timestamp.
struct ThetaSequence {
  std::vector<double> times;
  std::vector<Matrix> thetas;
  double edge_threshold = 1e-4;

  std::size_t size() const { return thetas.size(); }
  /// Off-diagonal pairs (i < j) with |theta_ij| > edge_threshold.
  std::vector<std::pair<int, int>> edges(std::size_t t) const;
};

/// A fixed matrix preceding the first timestamp, coupled to it only through
/// beta * scale * psi(theta_0 - fixed). Used by the streaming window.
struct Anchor {
  Matrix fixed;
  double gap = 1.0;
};

/// Consensus pair tying theta_0 to a fixed anchor.
struct AnchorState {
  Matrix fixed;
  double scale = 1.0;
  Matrix z, u;
  PerturbedNodeState inner;
};

/// ADMM iterate. Edge e couples timestamps e and e + 1: z1[e] is the copy of
/// theta[e], z2[e] the copy of theta[e + 1].
struct AdmmState {
  std::vector<Matrix> theta, z0, u0;  // size T
  std::vector<Matrix> z1, u1;         // size T - 1
  std::vector<Matrix> z2, u2;         // size T - 1
  std::vector<PerturbedNodeState> inner;  // size T - 1, perturbed node only
  std::vector<double> pair_scale;         // size T - 1, asynchronous beta scaling
  std::optional<AnchorState> anchor;
  double rho = 1.0;
  int iter = 0;
  double primal_res = 0.0;
  double dual_res = 0.0;

  std::size_t size() const { return theta.size(); }
  /// Identity thetas and consensus copies, zero duals.
  static AdmmState identity(std::size_t T, int p, double rho);
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;
  std::vector<double> objective_trace;
  double wall_seconds = 0.0;
  int inner_nonconverged = 0;  // perturbed-node inner solves that hit their cap
};

struct SolveResult {
  ThetaSequence networks;          // Z0: exactly sparse
  std::vector<Matrix> raw_thetas;  // Theta iterate, SPD
  SolveReport report;
  AdmmState state;
};

SolveResult solve(const EmpiricalCovSequence& covs, const PenaltySpec& penalty,
                  const SolverConfig& cfg = {}, const AdmmState* init = nullptr);

SolveResult solve_anchored(const EmpiricalCovSequence& covs, const PenaltySpec& penalty,
                           const SolverConfig& cfg, const Anchor& anchor,
                           const AdmmState* init = nullptr);

struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
  double eps_primal = 0.0;
  double eps_dual = 0.0;
  bool converged() const { return primal <= eps_primal && dual <= eps_dual; }
};

/// Stacked consensus violation and rho * change in Z since `prev`.
Residuals residuals(const AdmmState& state, const AdmmState& prev, const SolverConfig& cfg);

/// sum_i -n_i (log det Theta_i - tr(S_i Theta_i)) + lambda ||Theta_i||_od,1
///   + beta sum_i scale_i psi(Theta_i - Theta_{i-1}).
/// Throws DomainError when a matrix is not positive definite.
double objective(const std::vector<Matrix>& thetas, const EmpiricalCovSequence& covs,
                 const PenaltySpec& penalty);
double objective(const ThetaSequence& thetas, const EmpiricalCovSequence& covs,
                 const PenaltySpec& penalty);

/// n (log det Theta - tr(S Theta)). Throws DomainError for non-SPD Theta.
double log_likelihood(const Matrix& theta, const Matrix& S, int n);

}  // namespace tvgl
