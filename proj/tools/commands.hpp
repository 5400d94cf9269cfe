#pragma once

// Command implementations behind the tvnet binary. Each returns a process
// exit code: 0 ok, 1 input or numeric error, 2 solver did not converge.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tvgl/config.hpp"
#include "tvgl/evaluation.hpp"
#include "tvgl/penalty.hpp"

namespace tvnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNotConverged = 2;

struct SolverOptions {
  std::string penalty = "l2";
  double lambda = 0.1;
  double beta = 2.0;
  bool asynchronous = false;
  double rho = 1.0;
  double eps_abs = 1e-5;
  double eps_rel = 1e-4;
  int max_iter = 1000;
  std::optional<int> threads;  // falls back to TVNET_THREADS

  tvgl::PenaltySpec penalty_spec() const;
  tvgl::SolverConfig solver_config() const;
};

struct DataOptions {
  std::string input;
  std::optional<double> bucket;
  bool center = false;
  bool has_header = false;
};

struct SolveOptions {
  SolverOptions solver;
  DataOptions data;
  std::string output_dir = ".";
};

struct StreamOptions {
  SolverOptions solver;
  std::size_t window = 10;
  bool has_header = false;
};

struct SynthOptions {
  std::string kind = "global";
  int p = 10;
  int T = 100;
  int samples = 10;
  std::uint64_t seed = 0;
  std::optional<int> shift_index;
  std::string output_dir = ".";
};

struct EvalOptions {
  std::string input;  // scenario bundle with truth
  // Sized for about 10 samples per timestamp; lambda should grow with n.
  std::vector<double> lambdas{0.5, 1.0, 2.0, 3.0, 5.0};
  std::vector<double> betas{5.0, 10.0, 20.0, 50.0};
  std::uint64_t train_offset = 1000;
  SolverOptions solver;
  std::string output_dir = ".";
};

struct InterpolateOptions {
  std::string input;  // networks.json
  double time = 0.0;
  std::string output;  // empty: standard output
};

/// Thread count from the flag, else TVNET_THREADS, else 0 (OpenMP default).
int resolve_threads(const std::optional<int>& flag);

/// Observations from a CSV/TSV time series or a scenario bundle (.json).
tvgl::ObservationSet load_observations(const DataOptions& opts);

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int cmd_stream(const StreamOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_interpolate(const InterpolateOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace tvnet
