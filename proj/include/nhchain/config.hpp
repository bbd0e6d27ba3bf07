#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "nhchain/params.hpp"

namespace nhchain::config {

struct SpectrumConfig {
  int k_samples = 512;
};

struct WindingConfig {
  int k_samples = 1024;
  std::optional<Complex> base_point; // default: automatic loop centroid
};

struct DynamicsConfig {
  double t_max = 60.0;
  double dt_out = 0.1;
  bool forward = true;
  std::optional<double> phase; // override of the channel-pure launch phase
  std::optional<double> snapshot_time;
  bool include_ports = false;
  std::string integrator = "expm"; // or "rk45"
};

struct ScatteringConfig {
  double grid_min = -0.95;
  double grid_max = 0.95;
  int grid_count = 25;
};

struct OptimizeConfig {
  int n_min = 2;
  int n_max = 20;
  double tolerance = 1e-6;
};

/// Fully resolved run configuration. Parsing is strict: unknown keys are
/// rejected so a typo never silently falls back to a default.
struct RunConfig {
  ChainParams model;
  SpectrumConfig spectrum;
  WindingConfig winding;
  DynamicsConfig dynamics;
  ScatteringConfig scattering;
  OptimizeConfig optimize;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::filesystem::path& path);

  /// The resolved configuration (defaults filled in), embedded verbatim in
  /// every output metadata file.
  nlohmann::json to_json() const;
};

}  // namespace nhchain::config
