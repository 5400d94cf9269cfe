#include "tvgl/penalty.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tvgl/config.hpp"

namespace tvgl {

void PenaltySpec::validate() const {
  if (!std::isfinite(lambda) || lambda < 0.0) throw InputError("lambda must be finite and >= 0");
  if (!std::isfinite(beta) || beta < 0.0) throw InputError("beta must be finite and >= 0");
}

void SolverConfig::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InputError("rho must be positive");
  if (!(eps_abs > 0.0) || !(eps_rel > 0.0)) throw InputError("tolerances must be positive");
  if (max_iter < 1 || inner_max_iter < 1) throw InputError("iteration caps must be >= 1");
  if (!(inner_eps > 0.0)) throw InputError("inner tolerance must be positive");
  if (threads < 0) throw InputError("threads must be >= 0");
  if (objective_interval < 0) throw InputError("objective interval must be >= 0");
}

std::string_view penalty_name(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::ElementL1: return "l1";
    case PenaltyKind::GroupL2: return "l2";
    case PenaltyKind::Laplacian: return "laplacian";
    case PenaltyKind::LInf: return "linf";
    case PenaltyKind::PerturbedNode: return "perturbed-node";
  }
  return "unknown";
}

PenaltyKind parse_penalty(std::string_view name) {
  for (auto kind : {PenaltyKind::ElementL1, PenaltyKind::GroupL2, PenaltyKind::Laplacian,
                    PenaltyKind::LInf, PenaltyKind::PerturbedNode}) {
    if (penalty_name(kind) == name) return kind;
  }
  throw InputError("unknown penalty '" + std::string(name) +
                   "' (expected l1 | l2 | laplacian | linf | perturbed-node)");
}

int homogeneity_degree(PenaltyKind kind) { return kind == PenaltyKind::Laplacian ? 2 : 1; }

double psi_value(PenaltyKind kind, const Matrix& X) {
  switch (kind) {
    case PenaltyKind::ElementL1: return X.cwiseAbs().sum();
    case PenaltyKind::GroupL2: return X.colwise().norm().sum();
    case PenaltyKind::Laplacian: return X.squaredNorm();
    case PenaltyKind::LInf: return X.cwiseAbs().colwise().maxCoeff().sum();
    case PenaltyKind::PerturbedNode: return perturbed_node_norm(X);
  }
  return 0.0;
}

double perturbed_node_norm(const Matrix& X) {
  const double scale = X.norm();
  if (scale == 0.0) return 0.0;
  if ((X - X.transpose()).norm() > 1e-8 * scale) return std::numeric_limits<double>::infinity();

  // V = X/2 + K with K antisymmetric covers every V with V + V^T = X.
  // ADMM on G = X/2 + K, working on the unit-norm problem.
  const Matrix half = X / (2.0 * scale);
  const auto p = X.rows();
  Matrix K = Matrix::Zero(p, p);
  Matrix U = Matrix::Zero(p, p);
  Matrix G(p, p), K_prev(p, p), M(p, p);
  constexpr int kMaxIter = 20000;
  constexpr double kTol = 1e-12;
  for (int it = 0; it < kMaxIter; ++it) {
    M = half + K - U;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double n = M.col(j).norm();
      G.col(j) = n <= 1.0 ? Vector::Zero(p) : Vector((1.0 - 1.0 / n) * M.col(j));
    }
    K_prev = K;
    M = G - half + U;
    K = (M - M.transpose()) / 2.0;
    U += G - half - K;
    if ((G - half - K).norm() < kTol && (K - K_prev).norm() < kTol) break;
  }
  return scale * (half + K).colwise().norm().sum();
}

}  // namespace tvgl
