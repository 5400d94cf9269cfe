#pragma once

#include "tvgl/common.hpp"
#include "tvgl/config.hpp"
#include "tvgl/penalty.hpp"

namespace tvgl {

/// Scratch buffers for the per-timestamp proxes. One per worker thread;
/// resized lazily, so reuse across iterations does not allocate.
struct ProxWorkspace {
  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  Matrix sym;
  Matrix scratch;

  explicit ProxWorkspace(int p = 0);
  void resize(int p);
};

/// Warm-startable variables of the perturbed-node inner ADMM.
struct PerturbedNodeState {
  Matrix V, W, U1, U2, Y1, Y2;
  bool empty() const { return V.size() == 0; }
};

/// argmin_X -log det X + tr(S X) + 1/(2 eta) ||X - (A + A^T)/2||_F^2.
Matrix prox_logdet_trace(const Matrix& A, const Matrix& S, double eta, ProxWorkspace& ws);
Matrix prox_logdet_trace(const Matrix& A, const Matrix& S, double eta);

/// Element-wise soft threshold of the off-diagonal entries; diagonal untouched.
Matrix soft_threshold_offdiag(const Matrix& A, double thresh);

// Column proxes: argmin_x eta * phi(x) + 1/2 ||x - a||^2.
Vector prox_col_l1(const Vector& a, double eta);
Vector prox_col_l2(const Vector& a, double eta);
Vector prox_col_laplacian(const Vector& a, double eta);
/// Throws NumericError for non-finite input.
Vector prox_col_linf(const Vector& a, double eta);

/// prox of eta * psi over a whole matrix. Column-separable kinds apply the
/// column prox to each column; perturbed node runs the inner ADMM.
Matrix prox_matrix_psi(PenaltyKind kind, const Matrix& A, double eta, const SolverConfig& cfg,
                       PerturbedNodeState* warm = nullptr);

struct PairProx {
  Matrix prev;  // Z_{i-1,1}
  Matrix cur;   // Z_{i,2}
  bool inner_converged = true;
  int inner_iterations = 0;
};

/// Joint update of a consensus pair: prox of (eta/2) psi(Z_cur - Z_prev)
/// around (theta_prev + u_prev, theta_cur + u_cur). `eta` is 2 beta / rho.
PairProx prox_pair_psi(const Matrix& theta_prev, const Matrix& theta_cur, const Matrix& u_prev,
                       const Matrix& u_cur, PenaltyKind kind, double eta, const SolverConfig& cfg,
                       PerturbedNodeState* warm = nullptr);

/// Inner ADMM for the perturbed-node pair prox (weight beta / rho).
/// Returns the best iterate with inner_converged = false when the cap is hit.
PairProx prox_perturbed_node(const Matrix& theta_prev, const Matrix& theta_cur,
                             const Matrix& u_prev, const Matrix& u_cur, double beta, double rho,
                             const SolverConfig& cfg, PerturbedNodeState* warm = nullptr);

}  // namespace tvgl
