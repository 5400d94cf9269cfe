#pragma once

#include <optional>
#include <vector>

#include "tvgl/admm.hpp"

namespace tvgl {

/// Per-pair multiplier on beta in asynchronous mode: h psi(X / h) = scale * psi(X).
/// Degree-1 penalties are gap-independent (scale 1); the Laplacian gets 1 / h.
std::vector<double> async_weights(const std::vector<double>& gaps, const PenaltySpec& penalty);
double async_weight(double gap, PenaltyKind kind);

/// Estimate at time s between two solved neighbours, minimizing
/// w(s - t_left) psi(X - left) + w(t_right - s) psi(right - X) with w(d) = 1/d.
Matrix infer_intermediate(const Matrix& theta_left, const Matrix& theta_right, double t_left,
                          double t_right, double s, const PenaltySpec& penalty);

/// Fixed-window streaming estimator. The newest `window` timestamps are
/// re-solved on each append; older ones are frozen, and the most recently
/// frozen one anchors the window through its psi coupling.
class StreamState {
 public:
  StreamState(PenaltySpec penalty, SolverConfig cfg, std::size_t window = 10);

  struct Update {
    std::size_t index = 0;       // global index of the appended timestamp
    ThetaSequence window;        // current in-window estimates, oldest first
    std::optional<double> deviation;  // ||newest - previous||_F
    SolveReport report;
    double wall_seconds = 0.0;
  };

  Update append(double time, const Matrix& cov, int n);

  std::size_t window() const { return window_; }
  std::size_t size() const { return frozen_.size() + live_covs_.size(); }
  std::size_t live_size() const { return live_covs_.size(); }
  int dim() const { return dim_; }
  const ThetaSequence& frozen() const { return frozen_; }
  const ThetaSequence& live() const { return live_; }
  /// Frozen prefix followed by the live window.
  ThetaSequence all() const;
  /// The anchor matrix, i.e. the newest frozen estimate.
  const Matrix* anchor() const;

 private:
  PenaltySpec penalty_;
  SolverConfig cfg_;
  std::size_t window_;
  int dim_ = 0;
  ThetaSequence frozen_;
  EmpiricalCovSequence live_covs_;
  ThetaSequence live_;
  std::optional<AdmmState> state_;
};

}  // namespace tvgl
