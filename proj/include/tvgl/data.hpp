#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tvgl/common.hpp"

namespace tvgl {

/// Timestamped samples. `samples[i]` holds one observation per row
/// (n_i x p) for time `times[i]`; times are strictly increasing.
struct ObservationSet {
  std::vector<double> times;
  std::vector<Matrix> samples;
  int dim = 0;

  std::size_t num_timestamps() const { return times.size(); }
  std::size_t total_samples() const;
  void validate() const;
};

/// Per-timestamp empirical covariance S_i = (1/n_i) sum x x^T.
struct EmpiricalCovSequence {
  std::vector<double> times;
  std::vector<Matrix> covs;
  std::vector<int> counts;
  std::vector<double> gaps;  // gaps[k] = times[k+1] - times[k]

  std::size_t size() const { return covs.size(); }
  int dim() const { return covs.empty() ? 0 : static_cast<int>(covs.front().rows()); }
  void validate() const;
};

struct LoadOptions {
  // Field separator; auto-detected (tab if present, else comma) when unset.
  std::optional<char> delimiter;
  bool has_header = false;
  // Re-bin times to floor(t / width) * width before grouping.
  std::optional<double> bucket_width;
};

/// One parsed `time, v1, ..., vp` row.
struct ObservationRow {
  double time = 0.0;
  Vector values;
};

/// Parses a single data row; `row_number` is used in error messages.
ObservationRow parse_row(std::string_view line, char delimiter, std::size_t row_number);

ObservationSet parse_timeseries(std::istream& in, const LoadOptions& opts = {});
ObservationSet load_timeseries(const std::filesystem::path& path, const LoadOptions& opts = {});

/// Groups rows with equal (optionally bucketed) time into one timestamp,
/// sorted by time.
ObservationSet group_rows(std::vector<ObservationRow> rows,
                          std::optional<double> bucket_width = std::nullopt);

/// Subtracts the global per-dimension mean over all samples.
ObservationSet center_columns(const ObservationSet& obs);

EmpiricalCovSequence empirical_covariances(const ObservationSet& obs);

/// Covariance of a single n x p block of samples (1/n normalization).
Matrix sample_covariance(const Matrix& samples);

}  // namespace tvgl
