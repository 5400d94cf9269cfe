#include "tvgl/prox.hpp"

#include <algorithm>
#include <cmath>

namespace tvgl {

ProxWorkspace::ProxWorkspace(int p) { resize(p); }

void ProxWorkspace::resize(int p) {
  if (sym.rows() == p) return;
  eig = Eigen::SelfAdjointEigenSolver<Matrix>(p);
  sym.resize(p, p);
  scratch.resize(p, p);
}

Matrix prox_logdet_trace(const Matrix& A, const Matrix& S, double eta, ProxWorkspace& ws) {
  if (!(eta > 0.0)) throw InputError("prox_logdet_trace: eta must be positive");
  if (A.rows() != A.cols() || S.rows() != A.rows() || S.cols() != A.cols())
    throw InputError("prox_logdet_trace: shape mismatch");
  if (!A.allFinite() || !S.allFinite()) throw NumericError("prox_logdet_trace: non-finite input");

  ws.resize(static_cast<int>(A.rows()));
  const double inv_eta = 1.0 / eta;
  ws.sym.noalias() = (A + A.transpose()) * (0.5 * inv_eta);
  ws.sym -= S;
  ws.eig.compute(ws.sym, Eigen::ComputeEigenvectors);
  if (ws.eig.info() != Eigen::Success) throw NumericError("prox_logdet_trace: eigensolver failed");

  const Vector& d = ws.eig.eigenvalues();
  const Vector theta_eig =
      (d.array() + (d.array().square() + 4.0 * inv_eta).sqrt()) * (eta / 2.0);
  const Matrix& Q = ws.eig.eigenvectors();
  ws.scratch.noalias() = Q * theta_eig.asDiagonal();
  Matrix out = ws.scratch * Q.transpose();
  return (out + out.transpose()) / 2.0;
}

Matrix prox_logdet_trace(const Matrix& A, const Matrix& S, double eta) {
  ProxWorkspace ws(static_cast<int>(A.rows()));
  return prox_logdet_trace(A, S, eta, ws);
}

Matrix soft_threshold_offdiag(const Matrix& A, double thresh) {
  if (thresh < 0.0) throw InputError("soft threshold must be >= 0");
  Matrix out(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const double a = A(i, j);
      if (i == j) {
        out(i, j) = a;
      } else {
        const double mag = std::abs(a) - thresh;
        out(i, j) = mag <= 0.0 ? 0.0 : std::copysign(mag, a);
      }
    }
  }
  return out;
}

Vector prox_col_l1(const Vector& a, double eta) {
  return a.unaryExpr([eta](double v) {
    const double mag = std::abs(v) - eta;
    return mag <= 0.0 ? 0.0 : std::copysign(mag, v);
  });
}

Vector prox_col_l2(const Vector& a, double eta) {
  const double n = a.norm();
  if (n <= eta) return Vector::Zero(a.size());
  return (1.0 - eta / n) * a;
}

Vector prox_col_laplacian(const Vector& a, double eta) { return a / (1.0 + 2.0 * eta); }

Vector prox_col_linf(const Vector& a, double eta) {
  if (!a.allFinite()) throw NumericError("prox_col_linf: non-finite input");
  if (eta == 0.0) return a;
  if (!(eta > 0.0)) throw InputError("prox_col_linf: eta must be positive");
  if (a.lpNorm<1>() <= eta) return Vector::Zero(a.size());

  // Moreau: prox = a - eta * P(a / eta), P the projection onto the unit l1
  // ball, computed on magnitudes with signs restored. sigma solves
  // sum max(|a_i|/eta - sigma, 0) = 1.
  const Vector mag = a.cwiseAbs() / eta;
  auto excess = [&mag](double sigma) { return (mag.array() - sigma).max(0.0).sum() - 1.0; };
  double lo = 0.0;
  double hi = mag.maxCoeff();
  constexpr int kMaxBisect = 200;
  constexpr double kTol = 1e-10;
  double sigma = 0.5 * (lo + hi);
  bool done = false;
  for (int it = 0; it < kMaxBisect; ++it) {
    sigma = 0.5 * (lo + hi);
    const double g = excess(sigma);
    if (std::abs(g) < kTol || hi - lo < 1e-15 * std::max(1.0, hi)) {
      done = true;
      break;
    }
    (g > 0.0 ? lo : hi) = sigma;
  }
  if (!done) throw NumericError("prox_col_linf: bisection did not converge");

  // Polish with the exact threshold for the active set found by bisection.
  const auto active = (mag.array() > sigma);
  const double count = static_cast<double>(active.count());
  if (count > 0.0) sigma = ((active.cast<double>() * mag.array()).sum() - 1.0) / count;

  Vector out(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double proj = std::max(mag(i) - sigma, 0.0);
    out(i) = a(i) - eta * std::copysign(proj, a(i));
  }
  return out;
}

Matrix prox_matrix_psi(PenaltyKind kind, const Matrix& A, double eta, const SolverConfig& cfg,
                       PerturbedNodeState* warm) {
  if (eta < 0.0) throw InputError("prox eta must be >= 0");
  if (eta == 0.0) return A;
  Matrix E(A.rows(), A.cols());
  switch (kind) {
    case PenaltyKind::ElementL1:
      for (Eigen::Index j = 0; j < A.cols(); ++j) E.col(j) = prox_col_l1(A.col(j), eta);
      break;
    case PenaltyKind::GroupL2:
      for (Eigen::Index j = 0; j < A.cols(); ++j) E.col(j) = prox_col_l2(A.col(j), eta);
      break;
    case PenaltyKind::Laplacian:
      E = A / (1.0 + 2.0 * eta);
      break;
    case PenaltyKind::LInf:
      for (Eigen::Index j = 0; j < A.cols(); ++j) E.col(j) = prox_col_linf(A.col(j), eta);
      break;
    case PenaltyKind::PerturbedNode: {
      // prox of eta*psi at A is Y2 - Y1 of the pair prox around (0, A) with
      // pair weight eta/2.
      const Matrix zero = Matrix::Zero(A.rows(), A.cols());
      const auto pair = prox_perturbed_node(zero, A, zero, zero, eta * cfg.rho / 2.0, cfg.rho, cfg,
                                            warm);
      E = pair.cur - pair.prev;
      break;
    }
  }
  return E;
}

PairProx prox_pair_psi(const Matrix& theta_prev, const Matrix& theta_cur, const Matrix& u_prev,
                       const Matrix& u_cur, PenaltyKind kind, double eta, const SolverConfig& cfg,
                       PerturbedNodeState* warm) {
  if (eta == 0.0) return {theta_prev + u_prev, theta_cur + u_cur, true, 0};
  if (kind == PenaltyKind::PerturbedNode)
    return prox_perturbed_node(theta_prev, theta_cur, u_prev, u_cur, eta * cfg.rho / 2.0, cfg.rho,
                               cfg, warm);

  const Matrix E = prox_matrix_psi(kind, theta_cur - theta_prev + u_cur - u_prev, eta, cfg);
  const Matrix mid = (theta_prev + theta_cur + u_prev + u_cur) / 2.0;
  PairProx out;
  out.prev = mid - E / 2.0;
  out.cur = mid + E / 2.0;
  return out;
}

}  // namespace tvgl
