#pragma once

namespace tvgl {

/// Where per-timestamp kernels run. Serial is the reference path the
/// OpenMP path is tested against.
enum class Backend { Serial, OpenMP };

struct SolverConfig {
  double rho = 1.0;
  double eps_abs = 1e-5;
  double eps_rel = 1e-4;
  int max_iter = 1000;

  // Perturbed-node inner ADMM.
  int inner_max_iter = 500;
  double inner_eps = 1e-6;

  // Worker threads for the OpenMP backend; 0 means the OpenMP default.
  int threads = 0;
  Backend backend = Backend::OpenMP;

  // Record the objective every this many iterations (0 disables the trace;
  // the final objective is always reported).
  int objective_interval = 10;

  /// Throws InputError when a field is out of range.
  void validate() const;
};

}  // namespace tvgl
