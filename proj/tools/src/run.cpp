#include "kickedtop_cli/run.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>

#include <openssl/evp.h>

#include "csv_writer.hpp"
#include "kickedtop/experiments.hpp"
#include "kickedtop/kickedtop.hpp"

namespace qkt::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kLyapunovTransient = 100;

void say(const ProgressSink& progress, const std::string& line) {
  if (progress) {
    progress(line);
  }
}

std::string counter(std::string_view what, std::size_t done, std::size_t total) {
  return std::string(what) + " " + std::to_string(done) + "/" + std::to_string(total);
}

LyapunovConfig lyapunov_settings(const RunConfig& c) {
  LyapunovConfig out;
  out.kicks = c.kicks;
  out.transient = kLyapunovTransient;
  out.samples = c.samples;
  out.seed = *c.seed;
  out.workers = c.workers;
  return out;
}

void run_phase_space(const RunConfig& c, CsvWriter& csv, DriftMeter& drift,
                     const ProgressSink& progress) {
  const PoincareSection section =
      poincare_section(c.kappa.front(), c.trajectories, c.kicks, *c.seed, c.workers);
  for (const SectionPoint& pt : section.points) {
    csv.row(pt.trajectory, pt.kick, pt.theta, pt.phi);
  }
  drift.merge(section.drift);
  say(progress, counter("trajectories", c.trajectories, c.trajectories));
}

void run_evolve(const RunConfig& c, CsvWriter& csv, const ProgressSink& progress) {
  const KickedTop top(c.N, c.kappa.front(), c.p);
  const TimeSeries series = time_series(top, c.theta, c.phi, c.kicks);
  for (std::size_t n = 0; n < series.size(); ++n) {
    csv.row(static_cast<int>(n), series.entropy[n], series.concurrence[n]);
  }
  say(progress, counter("kicks", c.kicks, c.kicks));
}

void run_scan(const RunConfig& c, CsvWriter& csv, const ProgressSink& progress) {
  const KickedTop top(c.N, c.kappa.front(), c.p);
  // A single row pins the polar angle at theta (an azimuthal profile).
  const std::vector<double> thetas =
      c.grid_theta == 1 ? std::vector<double>{c.theta} : scan_theta_nodes(c.grid_theta);
  const std::vector<double> phis = azimuth_nodes(c.grid_phi);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const ScanResult row = phase_space_scan(top, std::span(&thetas[i], 1), phis, c.T, c.workers);
    for (std::size_t k = 0; k < phis.size(); ++k) {
      csv.row(thetas[i], phis[k], row.at(0, k).entropy, row.at(0, k).concurrence);
    }
    say(progress, counter("rows", i + 1, thetas.size()));
  }
}

void run_power(const RunConfig& c, CsvWriter& csv, DriftMeter& drift,
               const ProgressSink& progress) {
  SweepConfig sweep;
  sweep.qubits = c.N;
  sweep.window = c.T;
  sweep.n_theta = c.grid_theta;
  sweep.n_phi = c.grid_phi;
  sweep.p = c.p;
  sweep.lyapunov = lyapunov_settings(c);
  sweep.workers = c.workers;
  const PowerCurve curve = kappa_sweep(c.kappa, sweep, [&](std::size_t done, std::size_t total) {
    say(progress, counter("kappa", done, total));
  });
  for (const PowerPoint& pt : curve.points) {
    csv.row(pt.kappa, pt.entropy, pt.concurrence, pt.lambda);
  }
  drift.merge(curve.drift);
}

void run_lyapunov(const RunConfig& c, CsvWriter& csv, DriftMeter& drift,
                  const ProgressSink& progress) {
  const LyapunovConfig settings = lyapunov_settings(c);
  for (std::size_t i = 0; i < c.kappa.size(); ++i) {
    const LyapunovEstimate estimate = global_lyapunov(c.kappa[i], settings);
    csv.row(c.kappa[i], estimate.mean, estimate.stderr_est);
    drift.merge(estimate.drift);
    say(progress, counter("kappa", i + 1, c.kappa.size()));
  }
}

void write_manifest(const RunConfig& c, const RunReport& report, const fs::path& path) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const OutputFile& f : report.outputs) {
    outputs.push_back({{"path", f.path}, {"digest", f.digest}, {"schema", f.schema}});
  }
  nlohmann::json manifest;
  manifest["config"] = to_json(c);
  manifest["version"] = kVersion;
  manifest["duration_s"] = report.duration_s;
  manifest["drift"] = report.drift.cumulative;
  manifest["renormalizations"] = report.drift.renormalizations;
  manifest["outputs"] = std::move(outputs);

  std::ofstream out(path, std::ios::binary);
  out << manifest.dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
}

}  // namespace

const std::vector<std::string>& csv_columns(Experiment experiment) {
  static const std::map<Experiment, std::vector<std::string>> columns{
      {Experiment::PhaseSpace, {"traj_id", "kick", "theta", "phi"}},
      {Experiment::Evolve, {"n", "E", "C"}},
      {Experiment::Scan, {"theta", "phi", "E_T", "C_T"}},
      {Experiment::Power, {"kappa", "e_T", "c_T", "lambda"}},
      {Experiment::Sweep, {"kappa", "e_T", "c_T", "lambda"}},
      {Experiment::Lyapunov, {"kappa", "lambda", "stderr_est"}},
  };
  return columns.at(experiment);
}

std::string schema_of(Experiment experiment) {
  return std::string(name_of(experiment)) + "/" + std::to_string(kSchemaVersion);
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read '" + path.string() + "'");
  }
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-256 unavailable");
  }
  char buffer[1 << 16];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx, buffer, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest, &length);
  EVP_MD_CTX_free(ctx);

  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    char pair[3];
    std::snprintf(pair, sizeof pair, "%02x", digest[i]);
    hex += pair;
  }
  return hex;
}

RunReport run(const RunConfig& c, const ProgressSink& progress) {
  validate(c);
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir(c.output_path);
  fs::create_directories(dir);

  const std::string stem(name_of(c.experiment));
  const std::string csv_name = stem + ".csv";
  RunReport report;
  try {
    CsvWriter csv(dir / csv_name, csv_columns(c.experiment));
    switch (c.experiment) {
      case Experiment::PhaseSpace:
        run_phase_space(c, csv, report.drift, progress);
        break;
      case Experiment::Evolve:
        run_evolve(c, csv, progress);
        break;
      case Experiment::Scan:
        run_scan(c, csv, progress);
        break;
      case Experiment::Power:
      case Experiment::Sweep:
        run_power(c, csv, report.drift, progress);
        break;
      case Experiment::Lyapunov:
        run_lyapunov(c, csv, report.drift, progress);
        break;
    }
    csv.close();
  } catch (...) {
    // A half-written table must not be mistaken for a result.
    std::error_code ignored;
    fs::remove(dir / csv_name, ignored);
    throw;
  }
  report.outputs.push_back(
      {csv_name, "sha256:" + sha256_file(dir / csv_name), schema_of(c.experiment)});

  if (c.emit_plot) {
    const std::string script = stem + "_plot.py";
    emit_plot_script(c.experiment, dir / csv_name, dir / script);
    report.outputs.push_back({script, "sha256:" + sha256_file(dir / script), "plot-script/1"});
  }

  report.duration_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(c, report, dir / "manifest.json");
  return report;
}

}  // namespace qkt::cli
