#include "kickedtop_cli/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <utility>

#include "kickedtop/experiments.hpp"

namespace qkt::cli {

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 6> kNames{{
    {Experiment::PhaseSpace, "phase-space"},
    {Experiment::Evolve, "evolve"},
    {Experiment::Scan, "scan"},
    {Experiment::Power, "power"},
    {Experiment::Sweep, "sweep"},
    {Experiment::Lyapunov, "lyapunov"},
}};

// Dense Hilbert-space work grows as (N+1)^2 memory and (N+1)^3 time.
constexpr int kMaxQubits = 2000;

RunConfig defaults_for(Experiment experiment) {
  RunConfig c;
  c.experiment = experiment;
  switch (experiment) {
    case Experiment::PhaseSpace:
      c.kicks = 300;
      break;
    case Experiment::Evolve:
    case Experiment::Scan:
      break;
    case Experiment::Power:
    case Experiment::Sweep:
      c.N = 36;
      c.T = 50;
      c.grid_theta = 32;
      c.grid_phi = 64;
      c.kicks = 10000;
      if (experiment == Experiment::Sweep) {
        c.kappa = default_kappa_grid();
      }
      break;
    case Experiment::Lyapunov:
      c.kicks = 10000;
      break;
  }
  return c;
}

template <typename T>
void take(std::optional<T>& into, const std::optional<T>& from) {
  if (from) {
    into = from;
  }
}

template <typename T>
void fill(T& into, const std::optional<T>& from) {
  if (from) {
    into = *from;
  }
}

void require_count(int value, const char* field, int minimum = 1) {
  if (value < minimum) {
    throw ConfigError(field, "must be >= " + std::to_string(minimum) + ", got " +
                                 std::to_string(value));
  }
}

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) {
    throw ConfigError(field, "must be a finite number");
  }
}

using json = nlohmann::json;

int read_int(const json& value, const std::string& key) {
  if (!value.is_number_integer()) {
    throw ConfigError(key, "expected an integer");
  }
  const auto wide = value.get<std::int64_t>();
  if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
    throw ConfigError(key, "integer out of range");
  }
  return static_cast<int>(wide);
}

double read_number(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw ConfigError(key, "expected a number");
  }
  return value.get<double>();
}

}  // namespace

std::string_view name_of(Experiment experiment) {
  for (const auto& [e, name] : kNames) {
    if (e == experiment) {
      return name;
    }
  }
  return "unknown";
}

std::optional<Experiment> experiment_from_name(std::string_view name) {
  for (const auto& [e, n] : kNames) {
    if (n == name) {
      return e;
    }
  }
  return std::nullopt;
}

ConfigLayer ConfigLayer::overlaid_with(const ConfigLayer& top) const {
  ConfigLayer out = *this;
  take(out.experiment, top.experiment);
  take(out.N, top.N);
  take(out.kappa, top.kappa);
  take(out.p, top.p);
  take(out.theta, top.theta);
  take(out.phi, top.phi);
  take(out.kicks, top.kicks);
  take(out.T, top.T);
  take(out.grid_theta, top.grid_theta);
  take(out.grid_phi, top.grid_phi);
  take(out.trajectories, top.trajectories);
  take(out.samples, top.samples);
  take(out.seed, top.seed);
  take(out.workers, top.workers);
  take(out.output_path, top.output_path);
  take(out.emit_plot, top.emit_plot);
  return out;
}

RunConfig resolve(const ConfigLayer& layer) {
  if (!layer.experiment) {
    throw ConfigError("experiment", "no experiment given (phase-space, evolve, scan, power, "
                                    "sweep or lyapunov)");
  }
  RunConfig c = defaults_for(*layer.experiment);
  fill(c.N, layer.N);
  fill(c.kappa, layer.kappa);
  fill(c.p, layer.p);
  fill(c.theta, layer.theta);
  fill(c.phi, layer.phi);
  fill(c.kicks, layer.kicks);
  fill(c.T, layer.T);
  fill(c.grid_theta, layer.grid_theta);
  fill(c.grid_phi, layer.grid_phi);
  fill(c.trajectories, layer.trajectories);
  fill(c.samples, layer.samples);
  take(c.seed, layer.seed);
  fill(c.workers, layer.workers);
  fill(c.output_path, layer.output_path);
  fill(c.emit_plot, layer.emit_plot);
  return c;
}

bool uses_randomness(Experiment experiment) {
  switch (experiment) {
    case Experiment::PhaseSpace:
    case Experiment::Power:
    case Experiment::Sweep:
    case Experiment::Lyapunov:
      return true;
    case Experiment::Evolve:
    case Experiment::Scan:
      return false;
  }
  return false;
}

bool uses_pairs(Experiment experiment) {
  switch (experiment) {
    case Experiment::Evolve:
    case Experiment::Scan:
    case Experiment::Power:
    case Experiment::Sweep:
      return true;
    case Experiment::PhaseSpace:
    case Experiment::Lyapunov:
      return false;
  }
  return false;
}

void validate(const RunConfig& c) {
  require_count(c.N, "N");
  if (uses_pairs(c.experiment) && c.N < 2) {
    throw ConfigError("N", "pairwise entanglement requires N ≥ 2, got " + std::to_string(c.N));
  }
  if (c.N > kMaxQubits) {
    throw ConfigError("N", "at most " + std::to_string(kMaxQubits) + " qubits supported");
  }
  if (c.kappa.empty()) {
    throw ConfigError("kappa", "at least one value required");
  }
  for (const double k : c.kappa) {
    require_finite(k, "kappa");
    if (k < 0.0) {
      throw ConfigError("kappa", "must be >= 0");
    }
  }
  const bool single_kappa = c.experiment == Experiment::Evolve ||
                            c.experiment == Experiment::Scan ||
                            c.experiment == Experiment::PhaseSpace;
  if (single_kappa && c.kappa.size() != 1) {
    throw ConfigError("kappa", std::string(name_of(c.experiment)) + " takes a single value");
  }
  require_finite(c.p, "p");
  require_finite(c.theta, "theta");
  require_finite(c.phi, "phi");
  require_count(c.kicks, "kicks");
  require_count(c.T, "T");
  require_count(c.grid_theta, "grid_theta");
  require_count(c.grid_phi, "grid_phi");
  require_count(c.trajectories, "trajectories");
  require_count(c.samples, "samples");
  require_count(c.workers, "workers", 0);
  if (uses_randomness(c.experiment) && !c.seed) {
    throw ConfigError("seed", std::string(name_of(c.experiment)) +
                                  " draws random numbers; a seed is required");
  }
  if (c.output_path.empty()) {
    throw ConfigError("output_path", "must not be empty");
  }
}

nlohmann::json to_json(const RunConfig& c) {
  json j;
  j["experiment"] = name_of(c.experiment);
  j["N"] = c.N;
  j["kappa"] = c.kappa;
  j["p"] = c.p;
  j["theta"] = c.theta;
  j["phi"] = c.phi;
  j["kicks"] = c.kicks;
  j["T"] = c.T;
  j["grid_theta"] = c.grid_theta;
  j["grid_phi"] = c.grid_phi;
  j["trajectories"] = c.trajectories;
  j["samples"] = c.samples;
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["workers"] = c.workers;
  j["output_path"] = c.output_path;
  j["emit_plot"] = c.emit_plot;
  return j;
}

ConfigLayer layer_from_json(const nlohmann::json& object) {
  if (!object.is_object()) {
    throw ConfigError("config", "expected a JSON object");
  }
  ConfigLayer l;
  for (const auto& [key, value] : object.items()) {
    if (key == "experiment") {
      if (!value.is_string()) {
        throw ConfigError(key, "expected a string");
      }
      l.experiment = experiment_from_name(value.get<std::string>());
      if (!l.experiment) {
        throw ConfigError(key, "unknown experiment '" + value.get<std::string>() + "'");
      }
    } else if (key == "N") {
      l.N = read_int(value, key);
    } else if (key == "kappa") {
      std::vector<double> list;
      if (value.is_array()) {
        for (const auto& item : value) {
          list.push_back(read_number(item, key));
        }
      } else {
        list.push_back(read_number(value, key));
      }
      l.kappa = std::move(list);
    } else if (key == "p") {
      l.p = read_number(value, key);
    } else if (key == "theta") {
      l.theta = read_number(value, key);
    } else if (key == "phi") {
      l.phi = read_number(value, key);
    } else if (key == "kicks") {
      l.kicks = read_int(value, key);
    } else if (key == "T") {
      l.T = read_int(value, key);
    } else if (key == "grid_theta") {
      l.grid_theta = read_int(value, key);
    } else if (key == "grid_phi") {
      l.grid_phi = read_int(value, key);
    } else if (key == "trajectories") {
      l.trajectories = read_int(value, key);
    } else if (key == "samples") {
      l.samples = read_int(value, key);
    } else if (key == "seed") {
      if (value.is_null()) {
        continue;
      }
      if (!value.is_number_unsigned()) {
        throw ConfigError(key, "expected a non-negative 64-bit integer");
      }
      l.seed = value.get<std::uint64_t>();
    } else if (key == "workers") {
      l.workers = read_int(value, key);
    } else if (key == "output_path") {
      if (!value.is_string()) {
        throw ConfigError(key, "expected a string");
      }
      l.output_path = value.get<std::string>();
    } else if (key == "emit_plot") {
      if (!value.is_boolean()) {
        throw ConfigError(key, "expected true or false");
      }
      l.emit_plot = value.get<bool>();
    } else {
      throw ConfigError(key, "unknown setting");
    }
  }
  return l;
}

ConfigLayer load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config", "cannot open '" + path + "'");
  }
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("'") + path + "' is not valid JSON: " + e.what());
  }
  return layer_from_json(parsed);
}

}  // namespace qkt::cli
