#include "tvgl/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <omp.h>

namespace tvgl {

Matrix random_sparse_precision(int p, double edge_prob, double weight_min, double weight_max,
                               double diag_margin, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(weight_min, weight_max);
  Matrix m = Matrix::Zero(p, p);
  for (int j = 1; j < p; ++j) {
    for (int i = 0; i < j; ++i) {
      if (unit(rng) < edge_prob) {
        const double w = weight(rng) * (unit(rng) < 0.5 ? -1.0 : 1.0);
        m(i, j) = w;
        m(j, i) = w;
      }
    }
  }
  const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
  m.diagonal().setConstant(std::abs(min_eig) + diag_margin);
  return m;
}

namespace {

void set_diagonal_for_spd(Matrix& m, double margin) {
  m.diagonal().setZero();
  const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
  m.diagonal().setConstant(std::abs(min_eig) + margin);
}

// Resamples every edge of `node`, retrying until its support changes and it
// keeps at least one edge.
Matrix rewire_node(const Matrix& base, int node, const ScenarioParams& prm, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(prm.weight_min, prm.weight_max);
  const int p = static_cast<int>(base.rows());
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix m = base;
    bool changed = false;
    bool any = false;
    for (int j = 0; j < p; ++j) {
      if (j == node) continue;
      double w = 0.0;
      if (unit(rng) < prm.edge_prob) w = weight(rng) * (unit(rng) < 0.5 ? -1.0 : 1.0);
      changed = changed || ((w != 0.0) != (base(node, j) != 0.0));
      any = any || w != 0.0;
      m(node, j) = w;
      m(j, node) = w;
    }
    if (changed && any) {
      set_diagonal_for_spd(m, prm.diag_margin);
      return m;
    }
  }
  throw NumericError("could not rewire node");
}

}  // namespace

Scenario generate_scenario(const ScenarioParams& params) {
  const int p = params.p;
  const int T = params.T;
  if (p < 2) throw InputError("scenario dimension must be >= 2");
  if (T < 2) throw InputError("scenario needs at least 2 timestamps");
  if (params.samples_per_t < 1) throw InputError("samples per timestamp must be >= 1");
  const int shift = params.shift_index < 0 ? T / 2 : params.shift_index;
  if (shift < 1 || shift >= T) throw InputError("shift index must lie in [1, T)");

  std::mt19937_64 master(params.seed);
  const std::uint64_t seed_before = master();
  const std::uint64_t seed_after = master();
  std::mt19937_64 rewire_rng(master());
  std::mt19937_64 sample_rng(master());

  Scenario sc;
  GroundTruthScenario& truth = sc.truth;
  truth.params = params;
  truth.shift_index = shift;
  const Matrix before = random_sparse_precision(p, params.edge_prob, params.weight_min,
                                                params.weight_max, params.diag_margin, seed_before);
  Matrix after;
  if (params.kind == ShiftKind::GlobalShift) {
    after = random_sparse_precision(p, params.edge_prob, params.weight_min, params.weight_max,
                                    params.diag_margin, seed_after);
  } else {
    truth.perturbed_node = std::uniform_int_distribution<int>(0, p - 1)(rewire_rng);
    after = rewire_node(before, truth.perturbed_node, params, rewire_rng);
  }
  for (int t = 0; t < T; ++t) truth.true_inverse_covs.push_back(t < shift ? before : after);

  // x = L^{-T} z has covariance (L L^T)^{-1} = Theta^{-1}; rows are x^T = z^T L^{-1}.
  auto whitener = [](const Matrix& theta) -> Matrix {
    Eigen::LLT<Matrix> llt(theta);
    if (llt.info() != Eigen::Success) throw NumericError("ground truth is not positive definite");
    const Matrix L = llt.matrixL();
    return L.triangularView<Eigen::Lower>().solve(Matrix::Identity(theta.rows(), theta.cols()));
  };
  const Matrix linv_before = whitener(before);
  const Matrix linv_after = whitener(after);

  std::normal_distribution<double> normal(0.0, 1.0);
  ObservationSet& obs = sc.observations;
  obs.dim = p;
  for (int t = 0; t < T; ++t) {
    Matrix z(params.samples_per_t, p);
    for (Eigen::Index r = 0; r < z.rows(); ++r)
      for (Eigen::Index c = 0; c < z.cols(); ++c) z(r, c) = normal(sample_rng);
    obs.times.push_back(static_cast<double>(t));
    obs.samples.push_back(z * (t < shift ? linv_before : linv_after));
  }
  return sc;
}

Scenario generate_scenario(ShiftKind kind, int p, int T, int samples_per_t, std::uint64_t seed) {
  ScenarioParams prm;
  prm.kind = kind;
  prm.p = p;
  prm.T = T;
  prm.samples_per_t = samples_per_t;
  prm.seed = seed;
  return generate_scenario(prm);
}

EdgeCounts edge_counts(const std::vector<Matrix>& estimated, const std::vector<Matrix>& truth,
                       double threshold) {
  if (estimated.size() != truth.size()) throw InputError("estimate and truth differ in length");
  EdgeCounts c;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    const Matrix& e = estimated[t];
    const Matrix& g = truth[t];
    if (e.rows() != g.rows() || e.cols() != g.cols()) throw InputError("estimate and truth differ in shape");
    for (Eigen::Index j = 1; j < g.cols(); ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const bool predicted = std::abs(e(i, j)) > threshold;
        const bool actual = std::abs(g(i, j)) > threshold;
        if (predicted && actual) ++c.true_positive;
        else if (predicted) ++c.false_positive;
        else if (actual) ++c.false_negative;
      }
    }
  }
  return c;
}

double f1_from_counts(const EdgeCounts& c) {
  if (c.true_positive == 0) return 0.0;
  // 2PR / (P + R) in count form: one rounding, so hand examples match exactly.
  const auto tp2 = 2 * c.true_positive;
  return static_cast<double>(tp2) / static_cast<double>(tp2 + c.false_positive + c.false_negative);
}

double f1_score(const std::vector<Matrix>& estimated, const std::vector<Matrix>& truth,
                double threshold) {
  return f1_from_counts(edge_counts(estimated, truth, threshold));
}

double f1_score(const ThetaSequence& estimated, const GroundTruthScenario& truth) {
  return f1_score(estimated.thetas, truth.true_inverse_covs, estimated.edge_threshold);
}

std::vector<double> temporal_deviation(const std::vector<Matrix>& thetas) {
  std::vector<double> out;
  for (std::size_t i = 1; i < thetas.size(); ++i) out.push_back((thetas[i] - thetas[i - 1]).norm());
  return out;
}

std::vector<double> temporal_deviation(const ThetaSequence& thetas) {
  return temporal_deviation(thetas.thetas);
}

TdRatio td_ratio(const std::vector<double>& deviations, std::size_t shift_index) {
  if (deviations.empty()) throw InputError("td_ratio needs at least two timestamps");
  if (shift_index < 1 || shift_index > deviations.size())
    throw InputError("shift index must lie in [1, T - 1]");
  TdRatio r;
  const auto top = std::max_element(deviations.begin(), deviations.end());
  r.argmax_index = static_cast<std::size_t>(top - deviations.begin()) + 1;
  const double mean = std::accumulate(deviations.begin(), deviations.end(), 0.0) /
                      static_cast<double>(deviations.size());
  if (mean == 0.0) {
    r.all_zero = true;
    r.ratio = 0.0;
    return r;
  }
  r.ratio = deviations[shift_index - 1] / mean;
  return r;
}

TdRatio td_ratio(const ThetaSequence& thetas, std::size_t shift_index) {
  return td_ratio(temporal_deviation(thetas), shift_index);
}

double aic(const ThetaSequence& thetas, const EmpiricalCovSequence& covs) {
  if (thetas.size() != covs.size()) throw InputError("aic: length mismatch");
  double k = 0.0;
  double loglik = 0.0;
  for (std::size_t t = 0; t < thetas.size(); ++t) {
    k += static_cast<double>(thetas.edges(t).size());
    loglik += log_likelihood(thetas.thetas[t], covs.covs[t], covs.counts[t]);
  }
  return 2.0 * k - 2.0 * loglik;
}

std::vector<GridPoint> make_grid(const std::vector<double>& lambdas,
                                 const std::vector<double>& betas) {
  std::vector<GridPoint> grid;
  for (double l : lambdas)
    for (double b : betas) grid.push_back({l, b});
  return grid;
}

AicSelection aic_select(const ObservationSet& train, const std::vector<GridPoint>& grid,
                        PenaltyKind kind, const SolverConfig& cfg) {
  if (grid.empty()) throw InputError("aic_select: empty grid");
  const auto covs = empirical_covariances(train);

  SolverConfig inner = cfg;
  inner.backend = Backend::Serial;
  inner.threads = 1;
  inner.objective_interval = 0;

  AicSelection sel;
  sel.scores.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
  const auto n = static_cast<long>(grid.size());
  const int workers = cfg.backend == Backend::Serial ? 1
                      : cfg.threads > 0              ? cfg.threads
                                                     : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long g = 0; g < n; ++g) {
    PenaltySpec pen;
    pen.kind = kind;
    pen.lambda = grid[static_cast<std::size_t>(g)].lambda;
    pen.beta = grid[static_cast<std::size_t>(g)].beta;
    try {
      const auto res = solve(covs, pen, inner);
      sel.scores[static_cast<std::size_t>(g)] = aic(res.networks, covs);
    } catch (const Error&) {
      // left as NaN
    }
  }

  bool found = false;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double s = sel.scores[g];
    if (std::isnan(s)) {
      ++sel.failures;
      continue;
    }
    const GridPoint& pt = grid[g];
    const bool better =
        !found || s < sel.best_aic ||
        (s == sel.best_aic &&
         (pt.lambda > sel.best.lambda || (pt.lambda == sel.best.lambda && pt.beta > sel.best.beta)));
    if (better) {
      found = true;
      sel.best = pt;
      sel.best_aic = s;
    }
  }
  if (!found) throw NumericError("aic_select: every grid point failed");
  return sel;
}

}  // namespace tvgl
