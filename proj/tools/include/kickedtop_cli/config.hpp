#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qkt::cli {

enum class Experiment { PhaseSpace, Evolve, Scan, Power, Sweep, Lyapunov };

std::string_view name_of(Experiment experiment);
std::optional<Experiment> experiment_from_name(std::string_view name);

/// Invalid configuration; `field()` names the offending setting.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("config error: " + field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Fully resolved run settings. Fields an experiment does not use keep their
/// defaults and are echoed unchanged.
struct RunConfig {
  Experiment experiment = Experiment::Evolve;
  int N = 50;
  std::vector<double> kappa{3.0};
  double p = std::numbers::pi / 2;
  double theta = 2.25;
  double phi = 0.63;
  int kicks = 200;  // evolution length, section length or Lyapunov iterations
  int T = 200;      // averaging window
  int grid_theta = 60;
  int grid_phi = 60;
  int trajectories = 300;
  int samples = 100;
  std::optional<std::uint64_t> seed;
  int workers = 0;  // 0: machine parallelism
  std::string output_path = "out";
  bool emit_plot = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Settings as given by one source (config file or flags); unset fields fall
/// through to the next source and finally to per-experiment defaults.
struct ConfigLayer {
  std::optional<Experiment> experiment;
  std::optional<int> N;
  std::optional<std::vector<double>> kappa;
  std::optional<double> p;
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<int> kicks;
  std::optional<int> T;
  std::optional<int> grid_theta;
  std::optional<int> grid_phi;
  std::optional<int> trajectories;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> output_path;
  std::optional<bool> emit_plot;

  /// Fields set in `top` win over fields set here.
  ConfigLayer overlaid_with(const ConfigLayer& top) const;
};

/// Fills unset fields with the experiment's defaults; throws ConfigError if
/// no experiment was named.
RunConfig resolve(const ConfigLayer& layer);

/// Throws ConfigError naming the first offending field.
void validate(const RunConfig& config);

/// Whether the experiment draws random numbers (and so needs a seed).
bool uses_randomness(Experiment experiment);

/// Whether the experiment measures pairwise entanglement (and so needs N >= 2).
bool uses_pairs(Experiment experiment);

nlohmann::json to_json(const RunConfig& config);

/// Reads a config object with the keys written by to_json. Unknown keys and
/// mistyped values raise ConfigError.
ConfigLayer layer_from_json(const nlohmann::json& object);

ConfigLayer load_config_file(const std::string& path);

}  // namespace qkt::cli
