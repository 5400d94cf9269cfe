#pragma once

#include <string>
#include <string_view>

#include "tvgl/common.hpp"

namespace tvgl {

/// Temporal-evolution penalty applied to consecutive differences.
enum class PenaltyKind {
  ElementL1,     // few edges change at a time
  GroupL2,       // whole-graph restructuring at few timestamps
  Laplacian,     // smooth drift
  LInf,          // block-wise restructuring
  PerturbedNode  // one node rewires all of its edges
};

struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::GroupL2;
  double lambda = 0.0;  // off-diagonal sparsity weight
  double beta = 0.0;    // temporal consistency weight
  bool asynchronous = false;

  /// Throws InputError when a weight is negative or non-finite.
  void validate() const;
};

/// CLI spelling: l1 | l2 | laplacian | linf | perturbed-node.
std::string_view penalty_name(PenaltyKind kind);
PenaltyKind parse_penalty(std::string_view name);

/// Degree of positive homogeneity: psi(c X) = c^d psi(X) for c > 0.
int homogeneity_degree(PenaltyKind kind);

/// psi(X). Perturbed node solves its inner minimization numerically and is
/// +inf for non-symmetric X (no V satisfies V + V^T = X).
double psi_value(PenaltyKind kind, const Matrix& X);

/// min over V with V + V^T = X of the sum of column 2-norms of V.
double perturbed_node_norm(const Matrix& X);

}  // namespace tvgl
