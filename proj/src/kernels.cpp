#include "tvgl/kernels.hpp"

#include <omp.h>

namespace tvgl::kernels {

namespace {

// Runs body(i) for i in [0, n). The serial path is the reference; the OpenMP
// path hands each worker its own slot index for thread-local scratch.
template <typename Body>
void for_each_index(std::size_t n, const SolverConfig& cfg, Body&& body) {
  const auto count = static_cast<long>(n);
  if (cfg.backend == Backend::Serial || n < 2) {
    for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i), 0);
    return;
  }
  const int workers = worker_count(cfg);
#pragma omp parallel for schedule(static) num_threads(workers)
  for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i), omp_get_thread_num());
}

}  // namespace

int worker_count(const SolverConfig& cfg) {
  if (cfg.backend == Backend::Serial) return 1;
  return cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
}

void theta_step(AdmmState& state, const EmpiricalCovSequence& covs, const SolverConfig& cfg,
                std::vector<ProxWorkspace>& workspaces) {
  const std::size_t T = state.size();
  const int p = covs.dim();
  const auto needed = static_cast<std::size_t>(worker_count(cfg));
  if (workspaces.size() < needed) workspaces.resize(needed);
  for (auto& ws : workspaces) ws.resize(p);

  for_each_index(T, cfg, [&](std::size_t i, int slot) {
    Matrix A = state.z0[i] - state.u0[i];
    int copies = 1;
    if (i + 1 < T) {
      A += state.z1[i] - state.u1[i];
      ++copies;
    }
    if (i > 0) {
      A += state.z2[i - 1] - state.u2[i - 1];
      ++copies;
    } else if (state.anchor) {
      A += state.anchor->z - state.anchor->u;
      ++copies;
    }
    A /= static_cast<double>(copies);
    const double eta = covs.counts[i] / (copies * state.rho);
    state.theta[i] = prox_logdet_trace(A, covs.covs[i], eta, workspaces[static_cast<std::size_t>(slot)]);
  });
}

int z_step(AdmmState& state, const PenaltySpec& penalty, const SolverConfig& cfg) {
  const std::size_t T = state.size();
  const double thresh = penalty.lambda / state.rho;

  for_each_index(T, cfg, [&](std::size_t i, int) {
    state.z0[i] = soft_threshold_offdiag(state.theta[i] + state.u0[i], thresh);
  });

  const bool perturbed = penalty.kind == PenaltyKind::PerturbedNode;
  if (perturbed && state.inner.size() != T - 1) state.inner.resize(T - 1);
  SolverConfig inner_cfg = cfg;
  inner_cfg.rho = state.rho;

  std::vector<char> capped(T > 0 ? T - 1 : 0, 0);
  for_each_index(T > 0 ? T - 1 : 0, cfg, [&](std::size_t e, int) {
    const double scale = state.pair_scale.empty() ? 1.0 : state.pair_scale[e];
    const double eta = 2.0 * penalty.beta * scale / state.rho;
    auto pair = prox_pair_psi(state.theta[e], state.theta[e + 1], state.u1[e], state.u2[e],
                              penalty.kind, eta, inner_cfg, perturbed ? &state.inner[e] : nullptr);
    state.z1[e] = std::move(pair.prev);
    state.z2[e] = std::move(pair.cur);
    capped[e] = pair.inner_converged ? 0 : 1;
  });

  int nonconverged = 0;
  for (char c : capped) nonconverged += c;

  if (state.anchor) {
    // The anchor is fixed, so its pair reduces to a single-matrix prox of
    // (beta * scale / rho) psi around theta_0 + u - fixed.
    auto& a = *state.anchor;
    const double eta = penalty.beta * a.scale / state.rho;
    a.z = a.fixed +
          prox_matrix_psi(penalty.kind, state.theta[0] + a.u - a.fixed, eta, inner_cfg,
                          perturbed ? &a.inner : nullptr);
  }
  return nonconverged;
}

void dual_step(AdmmState& state, const SolverConfig& cfg) {
  const std::size_t T = state.size();
  for_each_index(T, cfg, [&](std::size_t i, int) {
    state.u0[i] += state.theta[i] - state.z0[i];
    if (i + 1 < T) {
      state.u1[i] += state.theta[i] - state.z1[i];
      state.u2[i] += state.theta[i + 1] - state.z2[i];
    }
  });
  if (state.anchor) state.anchor->u += state.theta[0] - state.anchor->z;
}

}  // namespace tvgl::kernels
