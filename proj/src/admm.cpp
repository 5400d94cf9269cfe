#include "tvgl/admm.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "tvgl/extensions.hpp"
#include "tvgl/kernels.hpp"

namespace tvgl {

std::vector<std::pair<int, int>> ThetaSequence::edges(std::size_t t) const {
  std::vector<std::pair<int, int>> out;
  const Matrix& m = thetas.at(t);
  for (Eigen::Index j = 1; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      if (std::abs(m(i, j)) > edge_threshold) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

AdmmState AdmmState::identity(std::size_t T, int p, double rho) {
  AdmmState s;
  const Matrix I = Matrix::Identity(p, p);
  const Matrix O = Matrix::Zero(p, p);
  s.theta.assign(T, I);
  s.z0.assign(T, I);
  s.u0.assign(T, O);
  const std::size_t E = T > 0 ? T - 1 : 0;
  s.z1.assign(E, I);
  s.u1.assign(E, O);
  s.z2.assign(E, I);
  s.u2.assign(E, O);
  s.rho = rho;
  return s;
}

double log_likelihood(const Matrix& theta, const Matrix& S, int n) {
  Eigen::LLT<Matrix> llt(theta);
  if (llt.info() != Eigen::Success) throw DomainError("log det of a matrix that is not positive definite");
  const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  if (!std::isfinite(logdet)) throw DomainError("log det is not finite");
  return n * (logdet - S.cwiseProduct(theta).sum());
}

namespace {

double offdiag_l1(const Matrix& m) { return m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum(); }

double objective_impl(const std::vector<Matrix>& thetas, const EmpiricalCovSequence& covs,
                      const PenaltySpec& penalty, const std::vector<double>& pair_scale,
                      const AnchorState* anchor) {
  if (thetas.size() != covs.size()) throw InputError("objective: length mismatch");
  double f = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    f -= log_likelihood(thetas[i], covs.covs[i], covs.counts[i]);
    f += penalty.lambda * offdiag_l1(thetas[i]);
  }
  if (penalty.beta > 0.0) {
    for (std::size_t e = 0; e + 1 < thetas.size(); ++e) {
      const double scale = pair_scale.empty() ? 1.0 : pair_scale[e];
      f += penalty.beta * scale * psi_value(penalty.kind, thetas[e + 1] - thetas[e]);
    }
    if (anchor)
      f += penalty.beta * anchor->scale * psi_value(penalty.kind, thetas.front() - anchor->fixed);
  }
  return f;
}

std::vector<double> pair_scales(const EmpiricalCovSequence& covs, const PenaltySpec& penalty) {
  if (!penalty.asynchronous) return std::vector<double>(covs.gaps.size(), 1.0);
  return async_weights(covs.gaps, penalty);
}

struct ZSnapshot {
  std::vector<Matrix> z0, z1, z2;
  Matrix anchor_z;
};

ZSnapshot snapshot(const AdmmState& s) {
  return {s.z0, s.z1, s.z2, s.anchor ? s.anchor->z : Matrix()};
}

Residuals residuals_impl(const AdmmState& s, const ZSnapshot& prev, const SolverConfig& cfg) {
  double primal = 0.0, dual = 0.0, theta_norm = 0.0, z_norm = 0.0, u_norm = 0.0;
  std::size_t entries = 0;
  auto add = [&](const Matrix& theta, const Matrix& z, const Matrix& z_prev, const Matrix& u) {
    primal += (theta - z).squaredNorm();
    dual += (z - z_prev).squaredNorm();
    theta_norm += theta.squaredNorm();
    z_norm += z.squaredNorm();
    u_norm += u.squaredNorm();
    entries += static_cast<std::size_t>(z.size());
  };
  const std::size_t T = s.size();
  for (std::size_t i = 0; i < T; ++i) add(s.theta[i], s.z0[i], prev.z0[i], s.u0[i]);
  for (std::size_t e = 0; e + 1 < T; ++e) {
    add(s.theta[e], s.z1[e], prev.z1[e], s.u1[e]);
    add(s.theta[e + 1], s.z2[e], prev.z2[e], s.u2[e]);
  }
  if (s.anchor) add(s.theta[0], s.anchor->z, prev.anchor_z, s.anchor->u);

  Residuals r;
  r.primal = std::sqrt(primal);
  r.dual = s.rho * std::sqrt(dual);
  const double root = std::sqrt(static_cast<double>(entries));
  r.eps_primal = cfg.eps_abs * root + cfg.eps_rel * std::sqrt(std::max(theta_norm, z_norm));
  r.eps_dual = cfg.eps_abs * root + cfg.eps_rel * s.rho * std::sqrt(u_norm);
  return r;
}

void check_state_shape(const AdmmState& s, std::size_t T, int p) {
  const std::size_t E = T - 1;
  if (s.theta.size() != T || s.z0.size() != T || s.u0.size() != T || s.z1.size() != E ||
      s.u1.size() != E || s.z2.size() != E || s.u2.size() != E)
    throw InputError("initial ADMM state has the wrong number of matrices");
  for (const auto& m : s.theta)
    if (m.rows() != p || m.cols() != p) throw InputError("initial ADMM state has the wrong dimension");
}

SolveResult solve_impl(const EmpiricalCovSequence& covs, const PenaltySpec& penalty,
                       const SolverConfig& cfg, const Anchor* anchor, const AdmmState* init) {
  if (covs.size() == 0) throw InputError("solve: no timestamps");
  covs.validate();
  penalty.validate();
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t T = covs.size();
  const int p = covs.dim();

  SolveResult result;
  AdmmState& state = result.state;
  if (init) {
    check_state_shape(*init, T, p);
    state = *init;
    if (state.rho != cfg.rho) {
      // Scaled duals are y / rho.
      const double r = state.rho / cfg.rho;
      for (auto& u : state.u0) u *= r;
      for (auto& u : state.u1) u *= r;
      for (auto& u : state.u2) u *= r;
      if (state.anchor) state.anchor->u *= r;
    }
  } else {
    state = AdmmState::identity(T, p, cfg.rho);
  }
  state.rho = cfg.rho;
  state.iter = 0;
  state.pair_scale = pair_scales(covs, penalty);

  if (anchor) {
    if (anchor->fixed.rows() != p || anchor->fixed.cols() != p)
      throw InputError("anchor dimension mismatch");
    if (!(anchor->gap > 0.0)) throw InputError("anchor gap must be positive");
    if (!state.anchor) {
      AnchorState a;
      a.z = state.theta.front();
      a.u = Matrix::Zero(p, p);
      state.anchor = std::move(a);
    }
    state.anchor->fixed = anchor->fixed;
    state.anchor->scale = penalty.asynchronous ? async_weight(anchor->gap, penalty.kind) : 1.0;
  } else {
    state.anchor.reset();
  }
  if (penalty.kind != PenaltyKind::PerturbedNode) state.inner.clear();

  std::vector<ProxWorkspace> workspaces(static_cast<std::size_t>(kernels::worker_count(cfg)),
                                        ProxWorkspace(p));
  SolveReport& report = result.report;
  const AnchorState* anchor_ptr = state.anchor ? &*state.anchor : nullptr;

  for (int k = 1; k <= cfg.max_iter; ++k) {
    state.iter = k;
    try {
      kernels::theta_step(state, covs, cfg, workspaces);
      const ZSnapshot prev = snapshot(state);
      report.inner_nonconverged += kernels::z_step(state, penalty, cfg);
      kernels::dual_step(state, cfg);
      for (std::size_t i = 0; i < T; ++i)
        if (!state.theta[i].allFinite() || !state.z0[i].allFinite())
          throw NumericError("non-finite value");
      const auto res = residuals_impl(state, prev, cfg);
      state.primal_res = res.primal;
      state.dual_res = res.dual;
      if (cfg.objective_interval > 0 && k % cfg.objective_interval == 0)
        report.objective_trace.push_back(
            objective_impl(state.theta, covs, penalty, state.pair_scale, anchor_ptr));
      if (res.converged()) {
        report.converged = true;
        break;
      }
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " at iteration " + std::to_string(k));
    }
  }

  report.iterations = state.iter;
  report.primal_residual = state.primal_res;
  report.dual_residual = state.dual_res;

  result.networks.times = covs.times;
  result.networks.thetas = state.z0;
  result.raw_thetas = state.theta;
  try {
    report.objective =
        objective_impl(result.networks.thetas, covs, penalty, state.pair_scale, anchor_ptr);
  } catch (const DomainError&) {
    report.objective = objective_impl(state.theta, covs, penalty, state.pair_scale, anchor_ptr);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace

Residuals residuals(const AdmmState& state, const AdmmState& prev, const SolverConfig& cfg) {
  return residuals_impl(state, snapshot(prev), cfg);
}

double objective(const std::vector<Matrix>& thetas, const EmpiricalCovSequence& covs,
                 const PenaltySpec& penalty) {
  penalty.validate();
  return objective_impl(thetas, covs, penalty, pair_scales(covs, penalty), nullptr);
}

double objective(const ThetaSequence& thetas, const EmpiricalCovSequence& covs,
                 const PenaltySpec& penalty) {
  return objective(thetas.thetas, covs, penalty);
}

SolveResult solve(const EmpiricalCovSequence& covs, const PenaltySpec& penalty,
                  const SolverConfig& cfg, const AdmmState* init) {
  return solve_impl(covs, penalty, cfg, nullptr, init);
}

SolveResult solve_anchored(const EmpiricalCovSequence& covs, const PenaltySpec& penalty,
                           const SolverConfig& cfg, const Anchor& anchor, const AdmmState* init) {
  return solve_impl(covs, penalty, cfg, &anchor, init);
}

}  // namespace tvgl
