// Acceptance harness. Prints one PASS/FAIL line per criterion followed by
// the measurements behind it. Exit status is nonzero only when the harness
// itself breaks (an exception escapes a criterion); a FAIL line is a result,
// not a crash.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tvgl/evaluation.hpp"
#include "tvgl/extensions.hpp"

using namespace tvgl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::vector<std::string> details;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

constexpr PenaltyKind kAllKinds[] = {PenaltyKind::ElementL1, PenaltyKind::GroupL2, PenaltyKind::Laplacian,
                                     PenaltyKind::LInf, PenaltyKind::PerturbedNode};

SolverConfig tight() {
  SolverConfig cfg;
  cfg.eps_abs = 1e-8;
  cfg.eps_rel = 1e-7;
  cfg.max_iter = 20000;
  cfg.inner_eps = 1e-9;
  cfg.inner_max_iter = 5000;
  return cfg;
}

// 1 ------------------------------------------------------------------------

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  const auto& all = test::oracle_fixture().at("tvgl");
  double worst = 0.0;
  std::string worst_at;
  int checked = 0, nonconverged = 0;
  for (const auto& inst : all) {
    const auto covs = test::fixture_covs(inst);
    for (auto kind : kAllKinds) {
      const PenaltySpec pen{kind, inst.at("lambda").get<double>(), inst.at("beta").get<double>(), false};
      const auto res = solve(covs, pen, tight());
      const double oracle =
          inst.at("oracle").at(std::string(penalty_name(kind))).at("objective").get<double>();
      const double rel = test::rel_diff(res.report.objective, oracle);
      if (rel > worst) {
        worst = rel;
        worst_at = fmt("instance %s penalty %s", inst.at("id").dump().c_str(),
                       std::string(penalty_name(kind)).c_str());
      }
      nonconverged += !res.report.converged;
      ++checked;
    }
  }
  const double elapsed = seconds_since(start);
  Outcome o;
  o.pass = checked == 100 && worst < 1e-3 && elapsed < 60.0;
  o.details = {fmt("%d solves, worst relative objective gap %.2e (%s), %d not converged", checked, worst,
                   worst_at.c_str(), nonconverged),
               fmt("runtime %.1f s (limit 60 s)", elapsed)};
  return o;
}

// 2 ------------------------------------------------------------------------

// psi for a symmetric 2x2 difference: V = [[a/2, s], [b - s, c/2]] and the
// column norms sum to the distance from (s, 0) to (b, |a|/2) plus to
// (0, -|c|/2), minimized by the straight line between the two points.
double perturbed_node_2x2(double a, double b, double c) {
  return std::hypot(b, 0.5 * (std::abs(a) + std::abs(c)));
}

// Gradient descent with backtracking on the logdet prox objective.
// Strong convexity 1/eta bounds the error by eta * ||grad||.
Matrix logdet_prox_descent(const Matrix& A, const Matrix& S, double eta) {
  const Matrix As = (A + A.transpose()) / 2.0;
  auto f = [&](const Matrix& X) {
    Eigen::LLT<Matrix> llt(X);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return -logdet + (S * X).trace() + (X - As).squaredNorm() / (2.0 * eta);
  };
  Matrix X = Matrix::Identity(A.rows(), A.cols());
  double step = eta;
  for (int it = 0; it < 200000; ++it) {
    const Matrix g = -X.inverse() + S + (X - As) / eta;
    const Matrix gs = (g + g.transpose()) / 2.0;
    if (gs.norm() < 1e-12) break;
    const double fx = f(X);
    step = std::min(step * 2.0, 10.0 * eta);
    while (true) {
      const Matrix Y = X - step * gs;
      if (f(Y) <= fx - 0.5 * step * gs.squaredNorm()) {
        X = Y;
        break;
      }
      step *= 0.5;
      if (step < 1e-20) return X;
    }
  }
  return X;
}

Outcome prox_correctness() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> eta_dist(0.05, 2.0);
  Outcome o;
  bool ok = true;

  using ColProx = Vector (*)(const Vector&, double);
  struct Col {
    const char* name;
    ColProx prox;
    std::function<double(const Vector&)> phi;
  };
  const Col cols[] = {
      {"l1", prox_col_l1, [](const Vector& x) { return x.lpNorm<1>(); }},
      {"l2", prox_col_l2, [](const Vector& x) { return x.norm(); }},
      {"laplacian", prox_col_laplacian, [](const Vector& x) { return x.squaredNorm(); }},
      {"linf", prox_col_linf, [](const Vector& x) { return x.lpNorm<Eigen::Infinity>(); }},
  };
  for (const auto& c : cols) {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const int d = 2 + k % 2;
      const Vector a = test::random_vector(d, rng, 1.5);
      const double eta = eta_dist(rng);
      const Vector brute = test::zoom_grid_minimize(
          [&](const Vector& x) { return eta * c.phi(x) + 0.5 * (x - a).squaredNorm(); }, a,
          a.cwiseAbs().maxCoeff() + 1.0, 21, 0.7);
      worst = std::max(worst, (c.prox(a, eta) - brute).cwiseAbs().maxCoeff());
    }
    ok &= worst < 1e-4;
    o.details.push_back(fmt("prox_col_%s: 200 inputs, max abs diff %.2e", c.name, worst));
  }

  {
    SolverConfig cfg;
    cfg.inner_eps = 1e-10;
    cfg.inner_max_iter = 100000;
    double worst = 0.0;
    int inner_fail = 0;
    for (int k = 0; k < 200; ++k) {
      const Matrix x1 = test::random_symmetric(2, rng), x2 = test::random_symmetric(2, rng);
      const double w = eta_dist(rng);
      const Matrix zero = Matrix::Zero(2, 2);
      const auto ours = prox_perturbed_node(x1, x2, zero, zero, w, 1.0, cfg);
      inner_fail += !ours.inner_converged;
      // With M = Y1 + Y2 and D = Y2 - Y1 the objective splits into
      // |M - (x1 + x2)|^2 / 4 and w psi(D) + |D - (x2 - x1)|^2 / 4.
      const Matrix d = x2 - x1;
      Vector start(3);
      start << d(0, 0), d(0, 1), d(1, 1);
      const Vector D = test::zoom_grid_minimize(
          [&](const Vector& v) {
            const double fit = (v(0) - d(0, 0)) * (v(0) - d(0, 0)) + 2.0 * (v(1) - d(0, 1)) * (v(1) - d(0, 1)) +
                               (v(2) - d(1, 1)) * (v(2) - d(1, 1));
            return w * perturbed_node_2x2(v(0), v(1), v(2)) + 0.25 * fit;
          },
          start, start.cwiseAbs().maxCoeff() + 1.0);
      Matrix Dm(2, 2);
      Dm << D(0), D(1), D(1), D(2);
      const Matrix M = x1 + x2;
      const Matrix y1 = (M - Dm) / 2.0, y2 = (M + Dm) / 2.0;
      worst = std::max({worst, (ours.prev - y1).cwiseAbs().maxCoeff(), (ours.cur - y2).cwiseAbs().maxCoeff()});
    }
    ok &= worst < 1e-4 && inner_fail == 0;
    o.details.push_back(
        fmt("perturbed-node pair prox (p=2): 200 inputs, max abs diff %.2e, %d inner caps hit", worst, inner_fail));
  }

  {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double a = std::normal_distribution<double>(0.0, 2.0)(rng);
      const double s = std::uniform_real_distribution<double>(0.01, 3.0)(rng);
      const double eta = eta_dist(rng);
      // -1/x + s + (x - a)/eta = 0  =>  x^2 + (eta s - a) x - eta = 0.
      const double b = eta * s - a;
      const double x = (-b + std::sqrt(b * b + 4.0 * eta)) / 2.0;
      const double ours = prox_logdet_trace(Matrix::Constant(1, 1, a), Matrix::Constant(1, 1, s), eta)(0, 0);
      worst = std::max(worst, std::abs(ours - x));
    }
    ok &= worst < 1e-5;
    o.details.push_back(fmt("prox_logdet_trace p=1: 200 inputs vs closed-form root, max abs diff %.2e", worst));
  }

  {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const Matrix A = test::random_symmetric(3, rng, 1.5);
      const Matrix S = test::sampled_covariance(test::random_spd(3, rng), 5, rng);
      const double eta = eta_dist(rng);
      const Matrix oracle = logdet_prox_descent(A, S, eta);
      worst = std::max(worst, (prox_logdet_trace(A, S, eta) - oracle).cwiseAbs().maxCoeff());
    }
    ok &= worst < 1e-5;
    o.details.push_back(fmt("prox_logdet_trace p=3: 200 inputs vs gradient descent, max abs diff %.2e", worst));
  }
  o.pass = ok;
  return o;
}

// 3 ------------------------------------------------------------------------

// Solver settings for the synthetic runs: with n samples per timestamp the
// likelihood scales with n, so rho is raised to match (rho = 1 stalls there).
SolverConfig synthetic_config() {
  SolverConfig cfg;
  cfg.rho = 20.0;
  cfg.max_iter = 5000;
  cfg.objective_interval = 0;
  return cfg;
}

constexpr std::uint64_t kTrainSeedOffset = 1000;
const std::vector<double> kLambdaGrid{0.5, 1.0, 2.0, 3.0, 5.0};
const std::vector<double> kBetaGrid{5.0, 10.0, 20.0, 50.0};

struct SeedResult {
  double f1 = 0.0;
  TdRatio td;
  bool converged = false;
};

SeedResult run_seed(const Scenario& sc, PenaltyKind kind, GridPoint g, const SolverConfig& cfg) {
  const auto res = solve(empirical_covariances(sc.observations), {kind, g.lambda, g.beta, false}, cfg);
  SeedResult r;
  r.f1 = f1_score(res.networks, sc.truth);
  r.td = td_ratio(res.networks, static_cast<std::size_t>(sc.truth.shift_index));
  r.converged = res.report.converged;
  return r;
}

Outcome shift_detection() {
  const auto start = Clock::now();
  const SolverConfig cfg = synthetic_config();
  Outcome o;

  // Global shift, l2 penalty, parameters chosen by AIC on an independent
  // training scenario.
  const auto global_train = generate_scenario(ShiftKind::GlobalShift, 10, 100, 10, kTrainSeedOffset);
  const auto g_sel = aic_select(global_train.observations, make_grid(kLambdaGrid, kBetaGrid), PenaltyKind::GroupL2, cfg);
  std::vector<double> f1s, tds;
  int argmax_hits = 0, nonconverged = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sc = generate_scenario(ShiftKind::GlobalShift, 10, 100, 10, seed);
    const auto r = run_seed(sc, PenaltyKind::GroupL2, g_sel.best, cfg);
    f1s.push_back(r.f1);
    tds.push_back(r.td.ratio);
    argmax_hits += r.td.argmax_index == 50;
    nonconverged += !r.converged;
  }
  const double f1_med = median(f1s), td_med = median(tds);
  const bool global_ok = f1_med >= 0.85 && argmax_hits >= 9 && td_med >= 10.0;
  o.details.push_back(fmt("global shift, l2, AIC-selected lambda=%g beta=%g: median F1 %.3f (need >= 0.85), "
                          "TD argmax at t=50 in %d/10 (need 9), median TD ratio %.2f (need >= 10), %d not converged",
                          g_sel.best.lambda, g_sel.best.beta, f1_med, argmax_hits, td_med, nonconverged));

  // Local shift: perturbed node against the static baseline (l1 with beta = 0).
  const auto local_train = generate_scenario(ShiftKind::LocalShift, 10, 100, 10, kTrainSeedOffset);
  const auto pn_sel =
      aic_select(local_train.observations, make_grid(kLambdaGrid, kBetaGrid), PenaltyKind::PerturbedNode, cfg);
  const auto st_sel = aic_select(local_train.observations, make_grid(kLambdaGrid, {0.0}), PenaltyKind::ElementL1, cfg);
  int wins = 0;
  std::vector<double> pn_f1, st_f1;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sc = generate_scenario(ShiftKind::LocalShift, 10, 100, 10, seed);
    const auto pn = run_seed(sc, PenaltyKind::PerturbedNode, pn_sel.best, cfg);
    const auto st = run_seed(sc, PenaltyKind::ElementL1, st_sel.best, cfg);
    pn_f1.push_back(pn.f1);
    st_f1.push_back(st.f1);
    wins += pn.f1 > st.f1;
  }
  const bool local_ok = wins >= 9;
  o.details.push_back(fmt("local shift: perturbed-node (lambda=%g beta=%g) median F1 %.3f vs static (lambda=%g) "
                          "%.3f, perturbed node strictly better in %d/10 (need 9)",
                          pn_sel.best.lambda, pn_sel.best.beta, median(pn_f1), st_sel.best.lambda, median(st_f1),
                          wins));

  const double elapsed = seconds_since(start);
  o.details.push_back(fmt("runtime %.1f s (limit 600 s)", elapsed));
  o.pass = global_ok && local_ok && elapsed < 600.0;

  // Diagnostic only: how far the AIC choice is from the best grid point on
  // one evaluation seed.
  const auto sc0 = generate_scenario(ShiftKind::GlobalShift, 10, 100, 10, 0);
  double best_f1 = -1.0;
  GridPoint best_point;
  for (const auto& g : make_grid(kLambdaGrid, kBetaGrid)) {
    const double f = run_seed(sc0, PenaltyKind::GroupL2, g, cfg).f1;
    if (f > best_f1) best_f1 = f, best_point = g;
  }
  o.details.push_back(fmt("diagnostic, global seed 0: AIC-selected F1 %.3f, grid-best F1 %.3f at lambda=%g beta=%g",
                          f1s[0], best_f1, best_point.lambda, best_point.beta));
  return o;
}

// 4 ------------------------------------------------------------------------

Outcome limits() {
  std::mt19937_64 rng(4040);
  Outcome o;
  const int p = 4, T = 3;
  std::vector<Matrix> covs;
  for (int t = 0; t < T; ++t) covs.push_back(test::sampled_covariance(test::random_spd(p, rng).inverse(), 12, rng));
  const auto seq = test::make_covs(covs, {12, 9, 15});
  const SolverConfig cfg = tight();
  const double lambda = 0.2;

  Matrix S = Matrix::Zero(p, p);
  int N = 0;
  for (int t = 0; t < T; ++t) {
    S += seq.counts[t] * seq.covs[t];
    N += seq.counts[t];
  }
  const auto pooled =
      solve(test::make_covs({S / N}, {N}), {PenaltyKind::ElementL1, T * lambda, 0.0, false}, cfg).networks.thetas[0];

  double pool_worst = 0.0, indep_worst = 0.0;
  std::size_t diag_edges = 0;
  std::vector<Matrix> singles;
  for (int t = 0; t < T; ++t)
    singles.push_back(solve(test::make_covs({seq.covs[t]}, {seq.counts[t]}), {PenaltyKind::ElementL1, lambda, 0.0, false},
                            cfg)
                          .networks.thetas[0]);
  for (auto kind : kAllKinds) {
    const auto big_beta = solve(seq, {kind, lambda, 1e6, false}, cfg);
    for (const auto& m : big_beta.networks.thetas) pool_worst = std::max(pool_worst, (m - pooled).cwiseAbs().maxCoeff());
    const auto big_lambda = solve(seq, {kind, 1e6, 1.0, false}, cfg);
    for (std::size_t t = 0; t < big_lambda.networks.size(); ++t) diag_edges += big_lambda.networks.edges(t).size();
    const auto zero_beta = solve(seq, {kind, lambda, 0.0, false}, cfg);
    for (int t = 0; t < T; ++t)
      indep_worst = std::max(indep_worst, (zero_beta.networks.thetas[t] - singles[t]).cwiseAbs().maxCoeff());
  }
  o.pass = pool_worst < 1e-3 && diag_edges == 0 && indep_worst < 1e-5;
  o.details = {fmt("beta=1e6 vs pooled graphical lasso, all penalties: max entry diff %.2e (limit 1e-3)", pool_worst),
               fmt("lambda=1e6, all penalties: %zu off-diagonal edges", diag_edges),
               fmt("beta=0 vs independent solves, all penalties: max entry diff %.2e (limit 1e-5)", indep_worst)};
  return o;
}

// 5 ------------------------------------------------------------------------

struct StreamRun {
  double worst_diff = 0.0;
  std::size_t compared = 0;
  std::vector<double> append_seconds;
};

StreamRun stream_against_batch(const std::vector<Matrix>& covs, int n, const PenaltySpec& pen,
                               const SolverConfig& cfg, std::size_t m) {
  const auto T = covs.size();
  const auto batch = solve(test::make_covs(covs, std::vector<int>(T, n)), pen, cfg);
  StreamState stream(pen, cfg, m);
  StreamRun run;
  for (std::size_t t = 0; t < T; ++t) run.append_seconds.push_back(stream.append(t, covs[t], n).wall_seconds);
  const auto& live = stream.live();
  const std::size_t offset = T - live.size();
  for (std::size_t k = 0; k < live.size(); ++k)
    run.worst_diff = std::max(run.worst_diff, (live.thetas[k] - batch.networks.thetas[offset + k]).norm());
  run.compared = live.size();
  return run;
}

// Stationary means the data never changes, so every timestamp carries the
// same empirical covariance. Independently resampled covariances change at
// every step and are reported for reference only.
Outcome streaming() {
  const int p = 10, n = 10, T = 30;
  const std::size_t m = 10;
  const Matrix sigma = random_sparse_precision(p, 0.2, 0.2, 0.6, 0.5, 5005).inverse();
  std::mt19937_64 rng(5005);
  const PenaltySpec pen{PenaltyKind::GroupL2, 2.0, 20.0, false};
  SolverConfig cfg = synthetic_config();
  cfg.eps_abs = 1e-7;
  cfg.eps_rel = 1e-6;
  cfg.max_iter = 20000;

  const auto run = stream_against_batch(std::vector<Matrix>(T, test::sampled_covariance(sigma, n, rng)), n, pen, cfg, m);
  const auto& times = run.append_seconds;
  // Appends are 1-based in the criterion: #5..#20 are indices 4..19.
  const double med = median(std::vector<double>(times.begin() + 4, times.begin() + 20));
  Outcome o;
  o.pass = run.worst_diff < 1e-2 && times[24] <= 3.0 * med;
  o.details = {fmt("stationary stream, %zu in-window matrices vs batch: max Frobenius diff %.2e (limit 1e-2)",
                   run.compared, run.worst_diff),
               fmt("append #25 %.4f s, median of #5-#20 %.4f s, ratio %.2f (limit 3)", times[24], med,
                   times[24] / med)};

  std::vector<Matrix> resampled;
  for (int t = 0; t < T; ++t) resampled.push_back(test::sampled_covariance(sigma, n, rng));
  for (double beta : {2.0, 20.0}) {
    const auto r = stream_against_batch(resampled, n, {PenaltyKind::GroupL2, 2.0, beta, false}, cfg, m);
    o.details.push_back(fmt("reference, resampled covariance per timestamp, beta=%g: max Frobenius diff %.2e", beta,
                            r.worst_diff));
  }
  return o;
}

// 6 ------------------------------------------------------------------------

Outcome scalability() {
  Outcome o;
  const int T = 10, n = 50;
  SolverConfig cfg;
  cfg.rho = n;
  cfg.max_iter = 20000;
  cfg.objective_interval = 0;
  const auto sc = generate_scenario(ShiftKind::GlobalShift, 100, T, n, 6006);
  const auto covs = empirical_covariances(sc.observations);
  const auto res = solve(covs, {PenaltyKind::GroupL2, 0.1 * n, 2.0 * n, false}, cfg);
  const bool fast = res.report.converged && res.report.wall_seconds < 300.0;
  o.details.push_back(fmt("p=100 T=10 l2: converged=%s after %d iterations in %.1f s (limit 300 s)",
                          res.report.converged ? "yes" : "no", res.report.iterations, res.report.wall_seconds));

  // Fixed iteration count with convergence checks disabled.
  SolverConfig timed = cfg;
  timed.eps_abs = 1e-300;
  timed.eps_rel = 1e-300;
  std::vector<double> logp, logt;
  for (int p : {25, 50, 100}) {
    const auto s = generate_scenario(ShiftKind::GlobalShift, p, T, n, 6006 + p);
    const auto c = empirical_covariances(s.observations);
    timed.max_iter = p == 100 ? 50 : 200;
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 3; ++rep) {
      const auto r = solve(c, {PenaltyKind::GroupL2, 0.1 * n, 2.0 * n, false}, timed);
      best = std::min(best, r.report.wall_seconds / r.report.iterations);
    }
    logp.push_back(std::log(p));
    logt.push_back(std::log(best));
    o.details.push_back(fmt("p=%d: %.3e s per iteration", p, best));
  }
  const double mp = std::accumulate(logp.begin(), logp.end(), 0.0) / 3.0;
  const double mt = std::accumulate(logt.begin(), logt.end(), 0.0) / 3.0;
  double num = 0.0, den = 0.0;
  for (int k = 0; k < 3; ++k) {
    num += (logp[k] - mp) * (logt[k] - mt);
    den += (logp[k] - mp) * (logp[k] - mp);
  }
  const double slope = num / den;
  o.details.push_back(fmt("log-log slope %.2f (need 2.5-3.5)", slope));
  o.pass = fast && slope >= 2.5 && slope <= 3.5;
  return o;
}

// 7 ------------------------------------------------------------------------

Matrix with_edges(int p, std::initializer_list<std::pair<int, int>> edges) {
  Matrix m = Matrix::Identity(p, p);
  for (auto [i, j] : edges) m(i, j) = m(j, i) = 0.5;
  return m;
}

Outcome metric_examples() {
  Outcome o;
  int failed = 0, total = 0;
  auto check = [&](bool ok, const char* what) {
    ++total;
    if (!ok) {
      ++failed;
      o.details.push_back(fmt("mismatch: %s", what));
    }
  };
  const Matrix truth = with_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  check(f1_score({truth}, {truth}, 1e-4) == 1.0, "perfect recovery gives F1 1");
  check(f1_score({Matrix::Identity(4, 4)}, {truth}, 1e-4) == 0.0, "no predicted edges gives F1 0");
  check(f1_score({with_edges(4, {{0, 1}, {0, 2}, {1, 3}})}, {truth}, 1e-4) == 4.0 / 7.0, "F1 4/7 example");
  const std::vector<Matrix> constant(5, truth);
  check(temporal_deviation(constant) == std::vector<double>(4, 0.0), "constant sequence has zero deviation");
  check(temporal_deviation(std::vector<Matrix>{Matrix::Constant(1, 1, 2.0), Matrix::Constant(1, 1, 5.0)}) ==
            std::vector<double>{3.0},
        "1x1 jump 2 -> 5 gives [3]");
  const auto r = td_ratio(std::vector<double>{0, 0, 9, 0}, 3);
  check(r.ratio == 4.0, "deviations [0,0,9,0] at shift 3 give ratio 4");
  check(td_ratio(std::vector<double>{1.5, 1.5, 1.5, 1.5}, 2).ratio == 1.0, "constant deviations give ratio 1");
  const auto z = td_ratio(std::vector<double>{0, 0, 0}, 2);
  check(z.all_zero && z.ratio == 0.0, "all-zero deviations give ratio 0 with the flag set");
  o.pass = failed == 0;
  o.details.insert(o.details.begin(), fmt("%d/%d hand-computed examples exact", total - failed, total));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "oracle equivalence", oracle_equivalence}, {2, "prox correctness", prox_correctness},
      {3, "shift detection accuracy", shift_detection},       {4, "limit behaviors", limits},
      {5, "streaming consistency", streaming},       {6, "scalability", scalability},
      {7, "metric examples", metric_examples},
  };
  int harness_errors = 0, passed = 0;
  std::ostringstream summary;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      ++harness_errors;
      o.pass = false;
      o.details = {std::string("harness error: ") + e.what()};
    }
    passed += o.pass;
    const std::string line = fmt("criterion %d %s: %s (%.1f s)", c.id, o.pass ? "PASS" : "FAIL", c.name,
                                 seconds_since(start));
    summary << line << "\n";
    std::cout << line << "\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
  }
  std::cout << "\n" << summary.str() << passed << "/7 criteria passed\n";
  return harness_errors == 0 ? 0 : 1;
}
