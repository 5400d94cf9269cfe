#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tvgl/admm.hpp"
#include "tvgl/data.hpp"

namespace tvgl {

enum class ShiftKind { GlobalShift, LocalShift };

struct ScenarioParams {
  ShiftKind kind = ShiftKind::GlobalShift;
  int p = 10;
  int T = 100;
  int samples_per_t = 10;
  std::uint64_t seed = 0;
  int shift_index = -1;       // -1: T / 2
  double edge_prob = 0.2;
  double weight_min = 0.2;
  double weight_max = 0.6;
  double diag_margin = 0.5;
};

/// Ground truth for a synthetic experiment. Timestamps are 0..T-1; the
/// truth switches from the first to the second matrix at `shift_index`.
struct GroundTruthScenario {
  ScenarioParams params;
  int shift_index = 0;
  int perturbed_node = -1;  // LocalShift only
  std::vector<Matrix> true_inverse_covs;
};

struct Scenario {
  GroundTruthScenario truth;
  ObservationSet observations;
};

Scenario generate_scenario(const ScenarioParams& params);
Scenario generate_scenario(ShiftKind kind, int p, int T, int samples_per_t, std::uint64_t seed);

/// Random sparse SPD precision matrix: Erdos-Renyi support, uniform
/// +-[weight_min, weight_max] weights, diagonal |min eig| + diag_margin.
Matrix random_sparse_precision(int p, double edge_prob, double weight_min, double weight_max,
                               double diag_margin, std::uint64_t seed);

struct EdgeCounts {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;
};

EdgeCounts edge_counts(const std::vector<Matrix>& estimated, const std::vector<Matrix>& truth,
                       double threshold);
double f1_from_counts(const EdgeCounts& c);
double f1_score(const ThetaSequence& estimated, const GroundTruthScenario& truth);
double f1_score(const std::vector<Matrix>& estimated, const std::vector<Matrix>& truth,
                double threshold);

/// ||Theta_i - Theta_{i-1}||_F for i = 1..T-1 (entry k is timestamp k + 1).
std::vector<double> temporal_deviation(const std::vector<Matrix>& thetas);
std::vector<double> temporal_deviation(const ThetaSequence& thetas);

struct TdRatio {
  double ratio = 0.0;
  std::size_t argmax_index = 0;  // timestamp index with the largest deviation
  bool all_zero = false;
};

/// Deviation at timestamp `shift_index` over the mean deviation.
TdRatio td_ratio(const std::vector<double>& deviations, std::size_t shift_index);
TdRatio td_ratio(const ThetaSequence& thetas, std::size_t shift_index);

/// 2 K - 2 sum_i l_i(Theta_i), K = nonzero off-diagonal pairs over all timestamps.
double aic(const ThetaSequence& thetas, const EmpiricalCovSequence& covs);

struct GridPoint {
  double lambda = 0.0;
  double beta = 0.0;
};

struct AicSelection {
  GridPoint best;
  double best_aic = 0.0;
  std::vector<double> scores;  // per grid point; NaN where the solve failed
  std::size_t failures = 0;
};

/// Solves each grid point on `train` and returns the AIC minimizer. Ties go
/// to larger lambda, then larger beta. Grid points run in parallel.
AicSelection aic_select(const ObservationSet& train, const std::vector<GridPoint>& grid,
                        PenaltyKind kind, const SolverConfig& cfg);

std::vector<GridPoint> make_grid(const std::vector<double>& lambdas,
                                 const std::vector<double>& betas);

}  // namespace tvgl
