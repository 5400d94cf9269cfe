#pragma once

// Test-only helpers: random instance generators, a brute-force grid
// minimizer used as an independent oracle, and fixture loading.

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "tvgl/admm.hpp"
#include "tvgl/io.hpp"

namespace tvgl::test {

inline Matrix random_symmetric(int p, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Matrix m(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) m(i, j) = n(rng);
  return (m + m.transpose()) / 2.0;
}

inline Matrix random_spd(int p, std::mt19937_64& rng, double shift = 0.5) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = n(rng);
  return a * a.transpose() / p + shift * Matrix::Identity(p, p);
}

inline Vector random_vector(int d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = n(rng);
  return v;
}

/// Covariance of `n` samples drawn from N(0, sigma).
inline Matrix sampled_covariance(const Matrix& sigma, int n, std::mt19937_64& rng) {
  const Matrix L = Eigen::LLT<Matrix>(sigma).matrixL();
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(n, sigma.rows());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < sigma.rows(); ++c) z(r, c) = g(rng);
  const Matrix x = z * L.transpose();
  return x.transpose() * x / n;
}

inline EmpiricalCovSequence make_covs(std::vector<Matrix> covs, std::vector<int> counts) {
  EmpiricalCovSequence seq;
  for (std::size_t i = 0; i < covs.size(); ++i) {
    seq.times.push_back(static_cast<double>(i));
    if (i > 0) seq.gaps.push_back(1.0);
  }
  seq.covs = std::move(covs);
  seq.counts = std::move(counts);
  return seq;
}

/// Brute-force minimizer of a convex function: evaluate a uniform grid on a
/// box, recentre on the best point, shrink, repeat.
inline Vector zoom_grid_minimize(const std::function<double(const Vector&)>& f, Vector center,
                                 double radius, int points_per_dim = 11, double shrink = 0.6,
                                 double final_radius = 1e-9) {
  const auto d = center.size();
  Vector best = center;
  double best_val = f(best);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  Vector x(d);
  while (radius > final_radius) {
    const Vector c = best;
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      for (Eigen::Index k = 0; k < d; ++k)
        x(k) = c(k) - radius + 2.0 * radius * idx[static_cast<std::size_t>(k)] / (points_per_dim - 1);
      const double v = f(x);
      if (v < best_val) {
        best_val = v;
        best = x;
      }
      Eigen::Index k = 0;
      while (k < d && ++idx[static_cast<std::size_t>(k)] == points_per_dim) idx[static_cast<std::size_t>(k++)] = 0;
      if (k == d) break;
    }
    radius *= shrink;
  }
  return best;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(TVGL_FIXTURE_DIR) + "/" + name;
}

inline const nlohmann::json& oracle_fixture() {
  static const nlohmann::json j = nlohmann::json::parse(io::read_file(fixture_path("oracle.json")));
  return j;
}

/// Covariance sequence of a fixture instance (unit time gaps).
inline EmpiricalCovSequence fixture_covs(const nlohmann::json& inst) {
  std::vector<Matrix> covs;
  for (const auto& c : inst.at("covs")) covs.push_back(io::matrix_from_json(c));
  return make_covs(std::move(covs), inst.at("counts").get<std::vector<int>>());
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace tvgl::test
