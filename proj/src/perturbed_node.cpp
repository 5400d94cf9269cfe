#include <cmath>

#include "tvgl/prox.hpp"

namespace tvgl {

// Inner ADMM for
//   minimize  beta * sum_j ||[V]_j||_2 + rho/2 ||(Y1, Y2) - (X1, X2)||_F^2
//   s.t.      V + W = Y1 - Y2,  V = W^T
// with scaled duals (U1, U2) and the outer rho as penalty. Every term carries
// the same rho/2 weight, so only beta / rho matters for the iterates.
//
//   (a) V = column group soft threshold at beta / (2 rho) of
//           ((Y1 - Y2 - W - U1) + (W^T - U2)) / 2
//   (b) x = (W, Y1, Y2) minimizes ||x - b||^2 + ||C x + D||^2 with
//       b = ((V + U2)^T, X1, X2), C = [I -I I], D = V + U1, i.e.
//       (I + C^T C) x = b - C^T D. With c = (1, -1, 1), the inverse is the
//       fixed block matrix I - c c^T / 4.
//   (c) U1 += V + W - Y1 + Y2,  U2 += V - W^T
PairProx prox_perturbed_node(const Matrix& theta_prev, const Matrix& theta_cur,
                             const Matrix& u_prev, const Matrix& u_cur, double beta, double rho,
                             const SolverConfig& cfg, PerturbedNodeState* warm) {
  if (!(rho > 0.0)) throw InputError("prox_perturbed_node: rho must be positive");
  if (beta < 0.0) throw InputError("prox_perturbed_node: beta must be >= 0");
  const auto p = theta_prev.rows();
  const Matrix X1 = theta_prev + u_prev;
  const Matrix X2 = theta_cur + u_cur;

  PairProx out;
  if (beta == 0.0) {
    out.prev = X1;
    out.cur = X2;
    return out;
  }

  PerturbedNodeState local;
  PerturbedNodeState& st = warm ? *warm : local;
  if (st.empty() || st.V.rows() != p) {
    st.V = Matrix::Zero(p, p);
    st.W = Matrix::Zero(p, p);
    st.U1 = Matrix::Zero(p, p);
    st.U2 = Matrix::Zero(p, p);
    st.Y1 = X1;
    st.Y2 = X2;
  }
  Matrix& V = st.V;
  Matrix& W = st.W;
  Matrix& U1 = st.U1;
  Matrix& U2 = st.U2;
  Matrix& Y1 = st.Y1;
  Matrix& Y2 = st.Y2;

  const double tau = beta / (2.0 * rho);
  const double tol = cfg.inner_eps * (1.0 + std::sqrt(X1.squaredNorm() + X2.squaredNorm()));
  Matrix A(p, p), rW(p, p), r1(p, p), r2(p, p), q(p, p);
  Matrix W_old(p, p), Y1_old(p, p), Y2_old(p, p);

  out.inner_converged = false;
  int it = 0;
  for (; it < cfg.inner_max_iter; ++it) {
    // (a)
    A = (Y1 - Y2 - W - U1 + W.transpose() - U2) / 2.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double n = A.col(j).norm();
      if (n <= tau)
        V.col(j).setZero();
      else
        V.col(j) = (1.0 - tau / n) * A.col(j);
    }

    // (b)
    W_old = W;
    Y1_old = Y1;
    Y2_old = Y2;
    const Matrix D = V + U1;
    rW = (V + U2).transpose() - D;
    r1 = X1 + D;
    r2 = X2 - D;
    q = (rW - r1 + r2) / 4.0;
    W = rW - q;
    Y1 = r1 + q;
    Y2 = r2 - q;

    // (c)
    const Matrix c1 = V + W - Y1 + Y2;
    const Matrix c2 = V - W.transpose();
    U1 += c1;
    U2 += c2;

    const double primal = std::sqrt(c1.squaredNorm() + c2.squaredNorm());
    const Matrix dW = W - W_old;
    const double dual = ((dW - (Y1 - Y1_old) + (Y2 - Y2_old)) - dW.transpose()).norm();
    if (primal <= tol && dual <= tol) {
      out.inner_converged = true;
      ++it;
      break;
    }
  }
  out.inner_iterations = it;
  out.prev = Y1;
  out.cur = Y2;
  return out;
}

}  // namespace tvgl
