#include "commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tvgl/data.hpp"
#include "tvgl/extensions.hpp"
#include "tvgl/io.hpp"

namespace tvnet {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using tvgl::Matrix;

tvgl::PenaltySpec SolverOptions::penalty_spec() const {
  tvgl::PenaltySpec p;
  p.kind = tvgl::parse_penalty(penalty);
  p.lambda = lambda;
  p.beta = beta;
  p.asynchronous = asynchronous;
  p.validate();
  return p;
}

tvgl::SolverConfig SolverOptions::solver_config() const {
  tvgl::SolverConfig cfg;
  cfg.rho = rho;
  cfg.eps_abs = eps_abs;
  cfg.eps_rel = eps_rel;
  cfg.max_iter = max_iter;
  cfg.threads = resolve_threads(threads);
  cfg.validate();
  return cfg;
}

int resolve_threads(const std::optional<int>& flag) {
  if (flag) {
    if (*flag < 0) throw tvgl::InputError("--threads must be >= 0");
    return *flag;
  }
  if (const char* env = std::getenv("TVNET_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
    throw tvgl::InputError(std::string("TVNET_THREADS is not a thread count: ") + env);
  }
  return 0;
}

namespace {

bool is_bundle(const std::string& path) { return fs::path(path).extension() == ".json"; }

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw tvgl::InputError("cannot create output directory " + dir);
}

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const tvgl::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

tvgl::ObservationSet load_observations(const DataOptions& opts) {
  if (opts.input.empty()) throw tvgl::InputError("--input is required");
  tvgl::ObservationSet obs;
  if (is_bundle(opts.input)) {
    obs = tvgl::io::load_scenario(opts.input).observations;
    if (opts.bucket) {
      std::vector<tvgl::ObservationRow> rows;
      for (std::size_t t = 0; t < obs.times.size(); ++t)
        for (Eigen::Index r = 0; r < obs.samples[t].rows(); ++r)
          rows.push_back({obs.times[t], obs.samples[t].row(r).transpose()});
      obs = tvgl::group_rows(std::move(rows), opts.bucket);
    }
  } else {
    tvgl::LoadOptions lo;
    lo.has_header = opts.has_header;
    lo.bucket_width = opts.bucket;
    obs = tvgl::load_timeseries(opts.input, lo);
  }
  if (opts.center) obs = tvgl::center_columns(obs);
  return obs;
}

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto penalty = opts.solver.penalty_spec();
    const auto cfg = opts.solver.solver_config();
    const auto covs = tvgl::empirical_covariances(load_observations(opts.data));
    const auto res = tvgl::solve(covs, penalty, cfg);

    ensure_dir(opts.output_dir);
    const fs::path dir(opts.output_dir);
    tvgl::io::write_file(dir / "networks.json", tvgl::io::format_networks({penalty, res.networks}));
    tvgl::io::write_file(dir / "deviation.csv",
                         tvgl::io::format_deviation_csv(res.networks.times, tvgl::temporal_deviation(res.networks)));
    tvgl::io::write_file(dir / "report.json", tvgl::io::report_to_json(res.report).dump(2) + "\n");

    out << "solved " << covs.size() << " timestamps (p = " << covs.dim() << ") in " << res.report.iterations
        << " iterations, objective " << fmt(res.report.objective, 10) << "\n";
    if (!res.report.converged) {
      err << "warning: not converged after " << res.report.iterations << " iterations\n";
      return kExitNotConverged;
    }
    return kExitOk;
  });
}

namespace {

// Accumulates rows of one timestamp until a row with a later time arrives.
struct PendingBucket {
  double time = 0.0;
  std::vector<tvgl::Vector> rows;
};

ordered_json matrix_json(const Matrix& m) {
  return ordered_json::parse(tvgl::io::matrix_to_json(m).dump());
}

}  // namespace

int cmd_stream(const StreamOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    tvgl::StreamState stream(opts.solver.penalty_spec(), opts.solver.solver_config(), opts.window);
    std::optional<PendingBucket> pending;
    std::size_t skipped = 0, emitted = 0, nonconverged = 0;
    int dim = 0;

    auto flush = [&] {
      if (!pending) return;
      Matrix X(static_cast<Eigen::Index>(pending->rows.size()), dim);
      for (std::size_t r = 0; r < pending->rows.size(); ++r) X.row(static_cast<Eigen::Index>(r)) = pending->rows[r];
      const auto up = stream.append(pending->time, tvgl::sample_covariance(X), static_cast<int>(X.rows()));
      if (!up.report.converged) ++nonconverged;
      ordered_json line;
      line["index"] = up.index;
      line["time"] = pending->time;
      line["samples"] = X.rows();
      line["deviation"] = up.deviation ? ordered_json(tvgl::io::round_sig(*up.deviation)) : ordered_json(nullptr);
      line["converged"] = up.report.converged;
      line["iterations"] = up.report.iterations;
      line["edges"] = up.window.edges(up.window.size() - 1).size();
      line["network"] = matrix_json(up.window.thetas.back());
      ordered_json window = ordered_json::array();
      for (std::size_t i = 0; i < up.window.size(); ++i)
        window.push_back({{"time", up.window.times[i]}, {"matrix", matrix_json(up.window.thetas[i])}});
      line["window"] = std::move(window);
      out << line.dump() << "\n" << std::flush;
      ++emitted;
      pending.reset();
    };

    std::string line;
    std::size_t row = 0;
    bool header_pending = opts.has_header;
    while (std::getline(in, line)) {
      ++row;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      if (header_pending) {
        header_pending = false;
        continue;
      }
      try {
        const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
        auto obs = tvgl::parse_row(line, delim, row);
        if (dim == 0) dim = static_cast<int>(obs.values.size());
        if (obs.values.size() != dim)
          throw tvgl::ParseError("ragged row " + std::to_string(row) + ": expected " + std::to_string(dim) +
                                     " values, got " + std::to_string(obs.values.size()),
                                 row);
        if (pending && obs.time < pending->time)
          throw tvgl::ParseError("row " + std::to_string(row) + " goes back in time", row);
        if (pending && obs.time > pending->time) flush();
        if (!pending) pending = PendingBucket{obs.time, {}};
        pending->rows.push_back(std::move(obs.values));
      } catch (const tvgl::ParseError& e) {
        ++skipped;
        err << "warning: skipping line: " << e.what() << "\n";
      }
    }
    flush();
    err << "stream: " << emitted << " timestamps, " << skipped << " malformed lines skipped, " << nonconverged
        << " window solves not converged\n";
    return kExitOk;
  });
}

namespace {

tvgl::ShiftKind parse_shift_kind(const std::string& s) {
  if (s == "global") return tvgl::ShiftKind::GlobalShift;
  if (s == "local") return tvgl::ShiftKind::LocalShift;
  throw tvgl::InputError("unknown scenario kind '" + s + "' (expected global or local)");
}

std::string observations_csv(const tvgl::ObservationSet& obs) {
  std::string out;
  char buf[64];
  for (std::size_t t = 0; t < obs.times.size(); ++t) {
    for (Eigen::Index r = 0; r < obs.samples[t].rows(); ++r) {
      std::snprintf(buf, sizeof buf, "%.17g", obs.times[t]);
      out += buf;
      for (Eigen::Index c = 0; c < obs.samples[t].cols(); ++c) {
        std::snprintf(buf, sizeof buf, ",%.17g", obs.samples[t](r, c));
        out += buf;
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    tvgl::ScenarioParams prm;
    prm.kind = parse_shift_kind(opts.kind);
    prm.p = opts.p;
    prm.T = opts.T;
    prm.samples_per_t = opts.samples;
    prm.seed = opts.seed;
    if (opts.shift_index) prm.shift_index = *opts.shift_index;
    const auto sc = tvgl::generate_scenario(prm);
    ensure_dir(opts.output_dir);
    const fs::path dir(opts.output_dir);
    tvgl::io::write_file(dir / "scenario.json", tvgl::io::format_scenario({sc.truth, sc.observations}));
    tvgl::io::write_file(dir / "observations.csv", observations_csv(sc.observations));
    out << "wrote " << opts.kind << " scenario (p = " << prm.p << ", T = " << prm.T << ", shift at "
        << sc.truth.shift_index << ") to " << dir.string() << "\n";
    return kExitOk;
  });
}

namespace {

struct EvalColumn {
  std::string name;
  tvgl::PenaltyKind kind;
  bool static_baseline;
};

}  // namespace

int cmd_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto bundle = tvgl::io::load_scenario(opts.input);
    if (!bundle.truth) throw tvgl::InputError("scenario bundle has no ground truth");
    const auto& truth = *bundle.truth;
    auto cfg = opts.solver.solver_config();

    // Parameters are selected by AIC on an independent draw of the same scenario.
    auto train_params = truth.params;
    train_params.seed = truth.params.seed + opts.train_offset;
    const auto train = tvgl::generate_scenario(train_params).observations;
    const auto covs = tvgl::empirical_covariances(bundle.observations);

    const std::vector<EvalColumn> columns{{"static", tvgl::PenaltyKind::ElementL1, true},
                                          {"l1", tvgl::PenaltyKind::ElementL1, false},
                                          {"l2", tvgl::PenaltyKind::GroupL2, false},
                                          {"perturbed-node", tvgl::PenaltyKind::PerturbedNode, false}};

    ordered_json results = ordered_json::array();
    std::map<std::string, std::vector<std::string>> rows;
    for (const auto& col : columns) {
      const auto grid = tvgl::make_grid(opts.lambdas, col.static_baseline ? std::vector<double>{0.0} : opts.betas);
      const auto sel = tvgl::aic_select(train, grid, col.kind, cfg);
      const auto res = tvgl::solve(covs, {col.kind, sel.best.lambda, sel.best.beta, false}, cfg);
      const double f1 = tvgl::f1_score(res.networks, truth);
      const auto td = tvgl::td_ratio(res.networks, static_cast<std::size_t>(truth.shift_index));
      results.push_back({{"method", col.name},
                         {"lambda", sel.best.lambda},
                         {"beta", sel.best.beta},
                         {"f1", tvgl::io::round_sig(f1)},
                         {"td_ratio", tvgl::io::round_sig(td.ratio)},
                         {"td_argmax", td.argmax_index},
                         {"converged", res.report.converged}});
      rows["lambda"].push_back(fmt(sel.best.lambda));
      rows["beta"].push_back(fmt(sel.best.beta));
      rows["f1"].push_back(fmt(f1, 4));
      rows["td_ratio"].push_back(fmt(td.ratio, 4));
      rows["td_argmax"].push_back(std::to_string(td.argmax_index));
    }

    ensure_dir(opts.output_dir);
    const fs::path dir(opts.output_dir);
    std::ostringstream csv;
    csv << "metric";
    for (const auto& c : columns) csv << "," << c.name;
    csv << "\n";
    for (const char* metric : {"f1", "td_ratio", "td_argmax", "lambda", "beta"}) {
      csv << metric;
      for (const auto& v : rows[metric]) csv << "," << v;
      csv << "\n";
    }
    tvgl::io::write_file(dir / "results.csv", csv.str());
    ordered_json root;
    root["scenario"] = truth.params.kind == tvgl::ShiftKind::GlobalShift ? "global" : "local";
    root["seed"] = truth.params.seed;
    root["shift_index"] = truth.shift_index;
    root["results"] = std::move(results);
    tvgl::io::write_file(dir / "results.json", root.dump(2) + "\n");

    out << std::left << std::setw(10) << "metric";
    for (const auto& c : columns) out << std::setw(16) << c.name;
    out << "\n";
    for (const char* metric : {"f1", "td_ratio", "td_argmax", "lambda", "beta"}) {
      out << std::setw(10) << metric;
      for (const auto& v : rows[metric]) out << std::setw(16) << v;
      out << "\n";
    }
    return kExitOk;
  });
}

int cmd_interpolate(const InterpolateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto file = tvgl::io::load_networks(opts.input);
    const auto& times = file.networks.times;
    const auto& thetas = file.networks.thetas;
    if (times.empty()) throw tvgl::InputError("networks file is empty");
    const double s = opts.time;
    if (!(s >= times.front() && s <= times.back()))
      throw tvgl::InputError("time " + fmt(s) + " lies outside the solved range [" + fmt(times.front()) + ", " +
                             fmt(times.back()) + "]");
    Matrix m;
    const auto hi = std::lower_bound(times.begin(), times.end(), s);
    const auto k = static_cast<std::size_t>(hi - times.begin());
    if (times[k] == s) {
      m = thetas[k];
    } else {
      m = tvgl::infer_intermediate(thetas[k - 1], thetas[k], times[k - 1], times[k], s, file.penalty);
    }
    ordered_json j;
    j["time"] = s;
    j["matrix"] = matrix_json(m);
    const std::string text = j.dump() + "\n";
    if (opts.output.empty()) {
      out << text;
    } else {
      tvgl::io::write_file(opts.output, text);
    }
    return kExitOk;
  });
}

}  // namespace tvnet
