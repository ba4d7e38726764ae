#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "speclink/linking.hpp"

namespace speclink::io {

/// One double as JSON text, 17 significant digits (lossless round trip).
std::string json_double(double v);

// Writers emit a fixed field order and the 17-digit rendering above, so
// emit -> parse -> emit is byte-stable.
std::string to_json(const PdeSpec& spec);
std::string to_json(const Trajectory& traj);
std::string to_json(const KoopmanMatrix& k);
std::string to_json(const SpectralDecomposition& dec);
std::string to_json(const ExperimentConfig& config);

PdeSpec pde_from_json(const nlohmann::json& j);
BasisSpec basis_from_json(const nlohmann::json& j);
Trajectory trajectory_from_json(const nlohmann::json& j);
KoopmanMatrix koopman_from_json(const nlohmann::json& j);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Header row of true-PDE names, first column of candidate names, one value
/// per cell with 9 significant digits.
std::string to_csv(const ConfusionMatrix& m);

/// Sidecar with the config echo, averaged tables, per-seed cells, and
/// diagonal-dominance flags.
std::string detail_json(const ExperimentConfig& config, const ConfusionResult& result);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);
nlohmann::json parse_json_file(const std::filesystem::path& path);

}  // namespace speclink::io
