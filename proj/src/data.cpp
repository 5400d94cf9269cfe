#include "tvgl/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <string>

namespace tvgl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
  cell = trim(cell);
  double value = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError("non-numeric cell '" + std::string(cell) + "' in row " + std::to_string(row) +
                         ", column " + std::to_string(col + 1),
                     row);
  }
  return value;
}

}  // namespace

std::size_t ObservationSet::total_samples() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += static_cast<std::size_t>(s.rows());
  return n;
}

void ObservationSet::validate() const {
  if (dim <= 0) throw InputError("observation dimension must be positive");
  if (times.size() != samples.size()) throw InputError("times and sample blocks differ in length");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1]))
      throw InputError("timestamps must be strictly increasing");
    if (samples[i].rows() < 1) throw InputError("every timestamp needs at least one sample");
    if (samples[i].cols() != dim) throw InputError("sample width does not match dimension");
  }
}

void EmpiricalCovSequence::validate() const {
  if (covs.empty()) throw InputError("empty covariance sequence");
  if (counts.size() != covs.size() || times.size() != covs.size())
    throw InputError("covariance sequence fields differ in length");
  if (gaps.size() + 1 != covs.size()) throw InputError("expected T - 1 gaps");
  const auto p = covs.front().rows();
  for (std::size_t i = 0; i < covs.size(); ++i) {
    if (covs[i].rows() != p || covs[i].cols() != p) throw InputError("covariance shape mismatch");
    if (counts[i] < 1) throw InputError("sample counts must be positive");
    if (!covs[i].allFinite()) throw InputError("non-finite covariance entry");
  }
  for (double h : gaps)
    if (!(h > 0.0)) throw InputError("time gaps must be positive");
}

ObservationRow parse_row(std::string_view line, char delimiter, std::size_t row_number) {
  ObservationRow row;
  std::vector<double> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    const auto cell = line.substr(start, pos == std::string_view::npos ? line.npos : pos - start);
    cells.push_back(parse_cell(cell, row_number, cells.size()));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (cells.size() < 2)
    throw ParseError("row " + std::to_string(row_number) + " has no sensor values", row_number);
  row.time = cells.front();
  row.values = Eigen::Map<const Vector>(cells.data() + 1, static_cast<Eigen::Index>(cells.size() - 1));
  return row;
}

ObservationSet parse_timeseries(std::istream& in, const LoadOptions& opts) {
  std::vector<ObservationRow> rows;
  std::optional<char> delim = opts.delimiter;
  std::string line;
  std::size_t row_number = 0;
  bool header_pending = opts.has_header;
  Eigen::Index width = -1;
  while (std::getline(in, line)) {
    ++row_number;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    if (!delim) delim = body.find('\t') != std::string_view::npos ? '\t' : ',';
    auto row = parse_row(body, *delim, row_number);
    if (width < 0) {
      width = row.values.size();
    } else if (row.values.size() != width) {
      throw ParseError("ragged row " + std::to_string(row_number) + ": expected " +
                           std::to_string(width) + " values, got " +
                           std::to_string(row.values.size()),
                       row_number);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no observation rows", 0);
  return group_rows(std::move(rows), opts.bucket_width);
}

ObservationSet load_timeseries(const std::filesystem::path& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_timeseries(in, opts);
}

ObservationSet group_rows(std::vector<ObservationRow> rows, std::optional<double> bucket_width) {
  if (rows.empty()) throw InputError("no observation rows");
  if (bucket_width && !(*bucket_width > 0.0)) throw InputError("bucket width must be positive");
  const auto p = rows.front().values.size();
  if (p == 0) throw InputError("rows carry no sensor values");

  // Stable grouping keeps rows of a bucket in input order.
  std::map<double, std::vector<const ObservationRow*>> buckets;
  for (const auto& r : rows) {
    if (r.values.size() != p) throw InputError("ragged rows");
    const double key = bucket_width ? std::floor(r.time / *bucket_width) * *bucket_width : r.time;
    buckets[key].push_back(&r);
  }

  ObservationSet obs;
  obs.dim = static_cast<int>(p);
  for (const auto& [t, members] : buckets) {
    Matrix block(static_cast<Eigen::Index>(members.size()), p);
    for (std::size_t k = 0; k < members.size(); ++k)
      block.row(static_cast<Eigen::Index>(k)) = members[k]->values.transpose();
    obs.times.push_back(t);
    obs.samples.push_back(std::move(block));
  }
  return obs;
}

ObservationSet center_columns(const ObservationSet& obs) {
  ObservationSet out = obs;
  const auto total = obs.total_samples();
  if (total == 0) return out;
  Vector mean = Vector::Zero(obs.dim);
  for (const auto& s : obs.samples) mean += s.colwise().sum().transpose();
  mean /= static_cast<double>(total);
  for (auto& s : out.samples) s.rowwise() -= mean.transpose();
  return out;
}

Matrix sample_covariance(const Matrix& samples) {
  Matrix S = samples.transpose() * samples / static_cast<double>(samples.rows());
  return (S + S.transpose()) / 2.0;
}

EmpiricalCovSequence empirical_covariances(const ObservationSet& obs) {
  obs.validate();
  EmpiricalCovSequence seq;
  seq.times = obs.times;
  for (std::size_t i = 0; i < obs.samples.size(); ++i) {
    seq.covs.push_back(sample_covariance(obs.samples[i]));
    seq.counts.push_back(static_cast<int>(obs.samples[i].rows()));
    if (i > 0) seq.gaps.push_back(obs.times[i] - obs.times[i - 1]);
  }
  return seq;
}

}  // namespace tvgl
