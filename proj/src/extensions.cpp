#include "tvgl/extensions.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace tvgl {

double async_weight(double gap, PenaltyKind kind) {
  if (!(gap > 0.0) || !std::isfinite(gap)) throw InputError("time gaps must be positive");
  // h psi(X / h) = h^(1 - d) psi(X) for a degree-d homogeneous psi.
  return homogeneity_degree(kind) == 2 ? 1.0 / gap : 1.0;
}

std::vector<double> async_weights(const std::vector<double>& gaps, const PenaltySpec& penalty) {
  std::vector<double> out;
  out.reserve(gaps.size());
  for (double h : gaps) out.push_back(async_weight(h, penalty.kind));
  return out;
}

Matrix infer_intermediate(const Matrix& theta_left, const Matrix& theta_right, double t_left,
                          double t_right, double s, const PenaltySpec& penalty) {
  if (!(t_left < s && s < t_right))
    throw InputError("intermediate time must lie strictly between its neighbours");
  if (theta_left.rows() != theta_right.rows() || theta_left.cols() != theta_right.cols())
    throw InputError("neighbour matrices differ in shape");

  const double w_left = 1.0 / (s - t_left);
  const double w_right = 1.0 / (t_right - s);
  if (penalty.kind == PenaltyKind::Laplacian)
    return (w_left * theta_left + w_right * theta_right) / (w_left + w_right);

  // Every other penalty is a symmetric, subadditive, degree-1 function, so by
  // the triangle inequality the heavier neighbour is optimal; on a tie the
  // whole segment is, and we take its midpoint.
  if (w_left > w_right) return theta_left;
  if (w_right > w_left) return theta_right;
  return (theta_left + theta_right) / 2.0;
}

StreamState::StreamState(PenaltySpec penalty, SolverConfig cfg, std::size_t window)
    : penalty_(penalty), cfg_(cfg), window_(window) {
  penalty_.validate();
  cfg_.validate();
  if (window_ < 1) throw InputError("stream window must be >= 1");
}

const Matrix* StreamState::anchor() const {
  return frozen_.thetas.empty() ? nullptr : &frozen_.thetas.back();
}

ThetaSequence StreamState::all() const {
  ThetaSequence out = frozen_;
  out.times.insert(out.times.end(), live_.times.begin(), live_.times.end());
  out.thetas.insert(out.thetas.end(), live_.thetas.begin(), live_.thetas.end());
  return out;
}

StreamState::Update StreamState::append(double time, const Matrix& cov, int n) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cov.rows() != cov.cols()) throw InputError("covariance must be square");
  if (dim_ == 0) dim_ = static_cast<int>(cov.rows());
  if (cov.rows() != dim_) throw InputError("covariance dimension mismatch");
  if (n < 1) throw InputError("sample count must be >= 1");
  const double last = !live_covs_.times.empty() ? live_covs_.times.back()
                      : !frozen_.times.empty()  ? frozen_.times.back()
                                                : -std::numeric_limits<double>::infinity();
  if (!(time > last)) throw InputError("stream times must be strictly increasing");

  if (!live_covs_.times.empty()) live_covs_.gaps.push_back(time - live_covs_.times.back());
  live_covs_.times.push_back(time);
  live_covs_.covs.push_back((cov + cov.transpose()) / 2.0);
  live_covs_.counts.push_back(n);

  // Warm start: the new timestamp starts from the newest estimate.
  if (state_) {
    AdmmState& s = *state_;
    const Matrix O = Matrix::Zero(dim_, dim_);
    const Matrix newest = s.theta.back();
    s.theta.push_back(newest);
    s.z0.push_back(s.z0.back());
    s.u0.push_back(O);
    s.z1.push_back(newest);
    s.u1.push_back(O);
    s.z2.push_back(newest);
    s.u2.push_back(O);
    if (penalty_.kind == PenaltyKind::PerturbedNode) s.inner.resize(s.z1.size());
  }

  if (live_covs_.size() > window_) {
    // Freeze the oldest live timestamp; it becomes the anchor and its edge to
    // the next timestamp becomes the anchor pair.
    frozen_.times.push_back(live_covs_.times.front());
    frozen_.thetas.push_back(live_.thetas.front());
    live_covs_.times.erase(live_covs_.times.begin());
    live_covs_.covs.erase(live_covs_.covs.begin());
    live_covs_.counts.erase(live_covs_.counts.begin());
    live_covs_.gaps.erase(live_covs_.gaps.begin());
    if (state_) {
      AdmmState& s = *state_;
      AnchorState a;
      a.fixed = frozen_.thetas.back();
      a.z = s.z2.front();
      a.u = s.u2.front();
      s.anchor = std::move(a);
      s.theta.erase(s.theta.begin());
      s.z0.erase(s.z0.begin());
      s.u0.erase(s.u0.begin());
      s.z1.erase(s.z1.begin());
      s.u1.erase(s.u1.begin());
      s.z2.erase(s.z2.begin());
      s.u2.erase(s.u2.begin());
      if (!s.inner.empty()) s.inner.erase(s.inner.begin());
    }
  }

  const AdmmState* init = state_ ? &*state_ : nullptr;
  SolveResult res;
  if (const Matrix* fixed = anchor()) {
    const double gap = live_covs_.times.front() - frozen_.times.back();
    res = solve_anchored(live_covs_, penalty_, cfg_, Anchor{*fixed, gap}, init);
  } else {
    res = solve(live_covs_, penalty_, cfg_, init);
  }
  state_ = std::move(res.state);
  live_ = std::move(res.networks);
  live_.edge_threshold = frozen_.edge_threshold;

  Update up;
  up.index = size() - 1;
  up.window = live_;
  const Matrix* previous = live_.thetas.size() >= 2 ? &live_.thetas[live_.thetas.size() - 2] : anchor();
  if (previous) up.deviation = (live_.thetas.back() - *previous).norm();
  up.report = std::move(res.report);
  up.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return up;
}

}  // namespace tvgl
