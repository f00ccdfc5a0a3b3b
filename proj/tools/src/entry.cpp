#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "kickedtop/kickedtop.hpp"
#include "kickedtop_cli/run.hpp"

namespace qkt::cli {

namespace {

/// Flag values land here; only the ones actually given are copied into the
/// override layer, so a config file keeps everything else.
struct FlagValues {
  std::string experiment;
  std::string config_path;
  int N = 0;
  std::vector<double> kappa;
  double p = 0, theta = 0, phi = 0;
  int kicks = 0, T = 0, grid_theta = 0, grid_phi = 0, trajectories = 0, samples = 0;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string output_path;
  bool emit_plot = false;
  bool quiet = false;
};

template <typename T>
void copy_if_given(const CLI::Option* option, std::optional<T>& into, const T& value) {
  if (option->count() > 0) {
    into = value;
  }
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum kicked top: entanglement dynamics and classical map experiments",
               "kickedtop"};
  app.set_version_flag("--version", std::string(kVersion));

  FlagValues f;
  std::vector<std::string> names;
  for (const Experiment e : {Experiment::PhaseSpace, Experiment::Evolve, Experiment::Scan,
                             Experiment::Power, Experiment::Sweep, Experiment::Lyapunov}) {
    names.emplace_back(name_of(e));
  }
  auto* o_experiment = app.add_option("experiment", f.experiment, "Experiment to run")
                           ->check(CLI::IsMember(names));
  app.add_option("--config", f.config_path, "JSON config file; flags override its values")
      ->check(CLI::ExistingFile);
  auto* o_n = app.add_option("--N", f.N, "Number of qubits (spin j = N/2)");
  auto* o_kappa = app.add_option("--kappa", f.kappa, "Chaoticity; a list for power, sweep "
                                                     "and lyapunov")
                      ->delimiter(',');
  auto* o_p = app.add_option("--p", f.p, "Kick angle in radians");
  auto* o_theta = app.add_option("--theta", f.theta, "Polar angle of the coherent state");
  auto* o_phi = app.add_option("--phi", f.phi, "Azimuth of the coherent state");
  auto* o_kicks = app.add_option("--kicks", f.kicks,
                                 "Kicks to evolve, per section trajectory, or Lyapunov "
                                 "iterations");
  auto* o_t = app.add_option("--T", f.T, "Averaging window in kicks");
  auto* o_gt = app.add_option("--grid-theta", f.grid_theta,
                              "Polar nodes (scan: 1 pins the row at --theta)");
  auto* o_gp = app.add_option("--grid-phi", f.grid_phi, "Azimuthal nodes");
  auto* o_traj = app.add_option("--trajectories", f.trajectories, "Section trajectories");
  auto* o_samples = app.add_option("--samples", f.samples, "Lyapunov starting points");
  auto* o_seed = app.add_option("--seed", f.seed, "Random seed (required for random draws)");
  auto* o_workers = app.add_option("--workers", f.workers, "Worker threads (0: all cores)");
  auto* o_output = app.add_option("--output", f.output_path, "Output directory");
  auto* o_plot = app.add_flag("--plot,!--no-plot", f.emit_plot, "Also write a plot script");
  app.add_flag("--quiet", f.quiet, "No progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return 0;
    }
    err << "config error: " << e.what() << "\n";
    return 2;
  }

  RunConfig config;
  try {
    ConfigLayer flags;
    if (o_experiment->count() > 0) {
      flags.experiment = experiment_from_name(f.experiment);
    }
    copy_if_given(o_n, flags.N, f.N);
    copy_if_given(o_kappa, flags.kappa, f.kappa);
    copy_if_given(o_p, flags.p, f.p);
    copy_if_given(o_theta, flags.theta, f.theta);
    copy_if_given(o_phi, flags.phi, f.phi);
    copy_if_given(o_kicks, flags.kicks, f.kicks);
    copy_if_given(o_t, flags.T, f.T);
    copy_if_given(o_gt, flags.grid_theta, f.grid_theta);
    copy_if_given(o_gp, flags.grid_phi, f.grid_phi);
    copy_if_given(o_traj, flags.trajectories, f.trajectories);
    copy_if_given(o_samples, flags.samples, f.samples);
    copy_if_given(o_seed, flags.seed, f.seed);
    copy_if_given(o_workers, flags.workers, f.workers);
    copy_if_given(o_output, flags.output_path, f.output_path);
    copy_if_given(o_plot, flags.emit_plot, f.emit_plot);

    const ConfigLayer file = f.config_path.empty() ? ConfigLayer{} : load_config_file(f.config_path);
    config = resolve(file.overlaid_with(flags));
    validate(config);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return 2;
  }

  ProgressSink progress;
  if (!f.quiet) {
    progress = [&err, name = std::string(name_of(config.experiment))](std::string_view line) {
      err << "[" << name << "] " << line << "\n" << std::flush;
    };
  }

  try {
    const RunReport report = run(config, progress);
    out << (std::filesystem::path(config.output_path) / "manifest.json").string() << "\n";
    if (!f.quiet) {
      err << "[" << name_of(config.experiment) << "] done in " << report.duration_s << " s\n";
    }
    return 0;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n"
        << "  while running " << to_json(config).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qkt::cli
