#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tvgl/admm.hpp"
#include "tvgl/evaluation.hpp"

namespace tvgl::io {

using json = nlohmann::json;

/// Significant digits used for solver output files.
inline constexpr int kOutputDigits = 12;
/// Matrices above this dimension are written as sparse triplets.
inline constexpr int kDenseLimit = 200;

/// Rounds to `digits` significant decimal digits (printf %.Ng round trip).
double round_sig(double value, int digits = kOutputDigits);

/// Dense row-major nested arrays.
json matrix_to_json(const Matrix& m, int digits = kOutputDigits);
Matrix matrix_from_json(const json& j);

/// Contents of networks.json.
struct NetworkFile {
  PenaltySpec penalty;
  ThetaSequence networks;
  int dim() const;
};

std::string format_networks(const NetworkFile& file);
NetworkFile parse_networks(std::string_view text);
NetworkFile load_networks(const std::filesystem::path& path);

/// `time,deviation` rows for timestamps 1..T-1.
std::string format_deviation_csv(const std::vector<double>& times,
                                 const std::vector<double>& deviations);

json report_to_json(const SolveReport& report);

/// Replayable scenario bundle: generation parameters, truth and samples at
/// full precision. `truth` is absent for bundles built from plain data.
struct ScenarioBundle {
  std::optional<GroundTruthScenario> truth;
  ObservationSet observations;
};

std::string format_scenario(const ScenarioBundle& bundle);
ScenarioBundle parse_scenario(std::string_view text);
ScenarioBundle load_scenario(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace tvgl::io
