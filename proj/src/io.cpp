#include "tvgl/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tvgl::io {

using ojson = nlohmann::ordered_json;

double round_sig(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value == 0.0 ? 0.0 : value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

json matrix_to_json(const Matrix& m, int digits) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(round_sig(m(i, j), digits));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

template <typename J>
Matrix matrix_from(const J& j) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InputError("matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)].template get<double>();
  }
  return m;
}

template <typename J>
J full_precision_matrix(const Matrix& m) {
  J rows = J::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    J row = J::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson penalty_to_json(const PenaltySpec& p) {
  ojson j;
  j["kind"] = std::string(penalty_name(p.kind));
  j["lambda"] = round_sig(p.lambda);
  j["beta"] = round_sig(p.beta);
  j["asynchronous"] = p.asynchronous;
  return j;
}

template <typename J>
const J& require(const J& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string_view shift_name(ShiftKind k) { return k == ShiftKind::GlobalShift ? "global" : "local"; }

ShiftKind parse_shift(const std::string& s) {
  if (s == "global") return ShiftKind::GlobalShift;
  if (s == "local") return ShiftKind::LocalShift;
  throw InputError("unknown shift kind '" + s + "'");
}

}  // namespace

Matrix matrix_from_json(const json& j) { return matrix_from(j); }

int NetworkFile::dim() const {
  return networks.thetas.empty() ? 0 : static_cast<int>(networks.thetas.front().rows());
}

std::string format_networks(const NetworkFile& file) {
  const auto& seq = file.networks;
  const int p = file.dim();
  const bool dense = p <= kDenseLimit;
  ojson root;
  root["format"] = "tvnet.networks";
  root["version"] = 1;
  root["penalty"] = penalty_to_json(file.penalty);
  root["dim"] = p;
  root["edge_threshold"] = round_sig(seq.edge_threshold);
  root["storage"] = dense ? "dense" : "sparse";
  ojson nets = ojson::array();
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const Matrix& m = seq.thetas[t];
    ojson entry;
    entry["time"] = round_sig(seq.times.at(t));
    if (dense) {
      entry["matrix"] = matrix_to_json(m);
    } else {
      ojson triplets = ojson::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i <= j; ++i)
          if (m(i, j) != 0.0) triplets.push_back({i, j, round_sig(m(i, j))});
      entry["triplets"] = std::move(triplets);
    }
    ojson edges = ojson::array();
    for (const auto& [i, j] : seq.edges(t)) edges.push_back({i, j, round_sig(m(i, j))});
    entry["edges"] = std::move(edges);
    nets.push_back(std::move(entry));
  }
  root["networks"] = std::move(nets);
  return root.dump() + "\n";
}

NetworkFile parse_networks(std::string_view text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const ojson::exception& e) {
    throw InputError(std::string("networks file is not valid JSON: ") + e.what());
  }
  if (require(root, "format") != "tvnet.networks") throw InputError("not a tvnet networks file");
  NetworkFile file;
  const auto& pen = require(root, "penalty");
  file.penalty.kind = parse_penalty(require(pen, "kind").get<std::string>());
  file.penalty.lambda = require(pen, "lambda").get<double>();
  file.penalty.beta = require(pen, "beta").get<double>();
  file.penalty.asynchronous = require(pen, "asynchronous").get<bool>();
  const int p = require(root, "dim").get<int>();
  file.networks.edge_threshold = require(root, "edge_threshold").get<double>();
  for (const auto& entry : require(root, "networks")) {
    file.networks.times.push_back(require(entry, "time").get<double>());
    if (entry.contains("matrix")) {
      Matrix m = matrix_from(entry.at("matrix"));
      if (m.rows() != p || m.cols() != p) throw InputError("network matrix has the wrong dimension");
      file.networks.thetas.push_back(std::move(m));
    } else {
      Matrix m = Matrix::Zero(p, p);
      for (const auto& t : require(entry, "triplets")) {
        const auto i = t.at(0).get<Eigen::Index>();
        const auto j = t.at(1).get<Eigen::Index>();
        if (i < 0 || j < 0 || i >= p || j >= p) throw InputError("triplet index out of range");
        m(i, j) = m(j, i) = t.at(2).get<double>();
      }
      file.networks.thetas.push_back(std::move(m));
    }
  }
  for (std::size_t t = 1; t < file.networks.times.size(); ++t)
    if (!(file.networks.times[t] > file.networks.times[t - 1]))
      throw InputError("network times must be strictly increasing");
  return file;
}

NetworkFile load_networks(const std::filesystem::path& path) { return parse_networks(read_file(path)); }

std::string format_deviation_csv(const std::vector<double>& times,
                                 const std::vector<double>& deviations) {
  if (deviations.size() + 1 != times.size() && !(times.empty() && deviations.empty()))
    throw InputError("deviation series needs T - 1 values");
  std::string out = "time,deviation\n";
  char buf[96];
  for (std::size_t k = 0; k < deviations.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.*g,%.*g\n", kOutputDigits, times[k + 1], kOutputDigits,
                  deviations[k]);
    out += buf;
  }
  return out;
}

json report_to_json(const SolveReport& r) {
  json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["primal_residual"] = round_sig(r.primal_residual);
  j["dual_residual"] = round_sig(r.dual_residual);
  j["objective"] = round_sig(r.objective);
  json trace = json::array();
  for (double v : r.objective_trace) trace.push_back(round_sig(v));
  j["objective_trace"] = std::move(trace);
  j["wall_seconds"] = round_sig(r.wall_seconds, 6);
  j["inner_nonconverged"] = r.inner_nonconverged;
  return j;
}

std::string format_scenario(const ScenarioBundle& bundle) {
  ojson root;
  root["format"] = "tvnet.scenario";
  root["version"] = 1;
  if (bundle.truth) {
    const auto& t = *bundle.truth;
    const auto& prm = t.params;
    ojson params;
    params["kind"] = std::string(shift_name(prm.kind));
    params["p"] = prm.p;
    params["T"] = prm.T;
    params["samples_per_t"] = prm.samples_per_t;
    params["seed"] = prm.seed;
    params["shift_index"] = prm.shift_index;
    params["edge_prob"] = prm.edge_prob;
    params["weight_min"] = prm.weight_min;
    params["weight_max"] = prm.weight_max;
    params["diag_margin"] = prm.diag_margin;
    ojson truth;
    truth["params"] = std::move(params);
    truth["shift_index"] = t.shift_index;
    truth["perturbed_node"] = t.perturbed_node;
    ojson mats = ojson::array();
    for (const auto& m : t.true_inverse_covs) mats.push_back(full_precision_matrix<ojson>(m));
    truth["inverse_covariances"] = std::move(mats);
    root["truth"] = std::move(truth);
  }
  const auto& obs = bundle.observations;
  ojson o;
  o["dim"] = obs.dim;
  o["times"] = obs.times;
  ojson samples = ojson::array();
  for (const auto& s : obs.samples) samples.push_back(full_precision_matrix<ojson>(s));
  o["samples"] = std::move(samples);
  root["observations"] = std::move(o);
  return root.dump() + "\n";
}

ScenarioBundle parse_scenario(std::string_view text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const ojson::exception& e) {
    throw InputError(std::string("scenario file is not valid JSON: ") + e.what());
  }
  if (require(root, "format") != "tvnet.scenario") throw InputError("not a tvnet scenario file");
  ScenarioBundle b;
  if (root.contains("truth")) {
    const auto& t = root.at("truth");
    const auto& prm = require(t, "params");
    GroundTruthScenario g;
    g.params.kind = parse_shift(require(prm, "kind").get<std::string>());
    g.params.p = require(prm, "p").get<int>();
    g.params.T = require(prm, "T").get<int>();
    g.params.samples_per_t = require(prm, "samples_per_t").get<int>();
    g.params.seed = require(prm, "seed").get<std::uint64_t>();
    g.params.shift_index = require(prm, "shift_index").get<int>();
    g.params.edge_prob = require(prm, "edge_prob").get<double>();
    g.params.weight_min = require(prm, "weight_min").get<double>();
    g.params.weight_max = require(prm, "weight_max").get<double>();
    g.params.diag_margin = require(prm, "diag_margin").get<double>();
    g.shift_index = require(t, "shift_index").get<int>();
    g.perturbed_node = require(t, "perturbed_node").get<int>();
    for (const auto& m : require(t, "inverse_covariances")) g.true_inverse_covs.push_back(matrix_from(m));
    b.truth = std::move(g);
  }
  const auto& o = require(root, "observations");
  b.observations.dim = require(o, "dim").get<int>();
  b.observations.times = require(o, "times").get<std::vector<double>>();
  for (const auto& s : require(o, "samples")) b.observations.samples.push_back(matrix_from(s));
  b.observations.validate();
  if (b.truth && b.truth->true_inverse_covs.size() != b.observations.times.size())
    throw InputError("truth and observations differ in length");
  return b;
}

ScenarioBundle load_scenario(const std::filesystem::path& path) { return parse_scenario(read_file(path)); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << contents;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace tvgl::io
