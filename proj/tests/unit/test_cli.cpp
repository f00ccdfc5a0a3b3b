#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include <gtest/gtest.h>

#include "kickedtop_cli/config.hpp"
#include "kickedtop_cli/run.hpp"

namespace qkt::cli {
namespace {

namespace fs = std::filesystem;

class ScratchDir {
 public:
  ScratchDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("kickedtop_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }

  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& leaf) const { return (path_ / leaf).string(); }

 private:
  fs::path path_;
};

struct Invocation {
  int status = 0;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "kickedtop");
  args.push_back("--quiet");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  const int status = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    out.push_back(line);
  }
  return out;
}

std::set<fs::path> tree(const fs::path& root) {
  std::set<fs::path> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    out.insert(fs::relative(entry.path(), root));
  }
  return out;
}

TEST(Config, DefaultsDependOnExperiment) {
  ConfigLayer layer;
  layer.experiment = Experiment::Sweep;
  const RunConfig sweep = resolve(layer);
  EXPECT_EQ(sweep.N, 36);
  EXPECT_EQ(sweep.T, 50);
  EXPECT_EQ(sweep.kappa.size(), 26u);
  layer.experiment = Experiment::PhaseSpace;
  EXPECT_EQ(resolve(layer).kicks, 300);
  EXPECT_THROW(resolve(ConfigLayer{}), ConfigError);
}

TEST(Config, JsonRoundTrip) {
  ConfigLayer layer;
  layer.experiment = Experiment::Power;
  layer.kappa = std::vector<double>{0.1, 1.0 / 3.0, 2.718281828459045};
  layer.seed = 18446744073709551615ull;
  layer.theta = 0.1 + 0.2;
  layer.emit_plot = true;
  const RunConfig original = resolve(layer);
  const nlohmann::json echoed = nlohmann::json::parse(to_json(original).dump());
  EXPECT_EQ(resolve(layer_from_json(echoed)), original);

  ConfigLayer no_seed;
  no_seed.experiment = Experiment::Scan;
  const RunConfig scan = resolve(no_seed);
  EXPECT_EQ(resolve(layer_from_json(to_json(scan))), scan);
}

TEST(Config, ManifestEchoReparsesToSameConfig) {
  ScratchDir dir;
  const auto r = invoke({"lyapunov", "--kappa", "1,2.5", "--samples", "3", "--kicks", "1000",
                         "--seed", "11", "--output", dir / "run"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto manifest = nlohmann::json::parse(slurp(dir.path() / "run" / "manifest.json"));
  const RunConfig echoed = resolve(layer_from_json(manifest.at("config")));
  EXPECT_EQ(echoed.experiment, Experiment::Lyapunov);
  EXPECT_EQ(echoed.kappa, (std::vector<double>{1.0, 2.5}));
  EXPECT_EQ(echoed.seed, 11u);
  EXPECT_EQ(echoed.output_path, dir / "run");

  // Feeding the echo back as a config file reproduces the run exactly.
  std::ofstream(dir / "echo.json") << manifest.at("config").dump();
  const std::string first = slurp(dir.path() / "run" / "lyapunov.csv");
  ASSERT_EQ(invoke({"--config", dir / "echo.json"}).status, 0);
  EXPECT_EQ(slurp(dir.path() / "run" / "lyapunov.csv"), first);
}

TEST(Config, FlagsOverrideFile) {
  ScratchDir dir;
  std::ofstream(dir / "cfg.json") << R"({"experiment": "evolve", "N": 8, "kicks": 5,
                                         "output_path": ")"
                                  << dir / "from_file" << R"("})";
  ASSERT_EQ(invoke({"--config", dir / "cfg.json", "--kicks", "7"}).status, 0);
  const auto rows = lines_of(dir.path() / "from_file" / "evolve.csv");
  EXPECT_EQ(rows.size(), 1u + 8u);
  const auto manifest =
      nlohmann::json::parse(slurp(dir.path() / "from_file" / "manifest.json"));
  EXPECT_EQ(manifest["config"]["N"], 8);
  EXPECT_EQ(manifest["config"]["kicks"], 7);
}

TEST(Config, FileErrorsNameTheField) {
  ScratchDir dir;
  std::ofstream(dir / "typo.json") << R"({"experiment": "evolve", "kiks": 5})";
  auto r = invoke({"--config", dir / "typo.json"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("kiks"), std::string::npos);

  std::ofstream(dir / "type.json") << R"({"experiment": "evolve", "N": "fifty"})";
  r = invoke({"--config", dir / "type.json"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("N:"), std::string::npos);

  std::ofstream(dir / "broken.json") << "{";
  EXPECT_EQ(invoke({"--config", dir / "broken.json"}).status, 2);
}

TEST(Validation, SingleQubitRejectedForPairwiseExperiments) {
  ScratchDir dir;
  const auto r = invoke({"evolve", "--N", "1", "--output", dir / "x"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("N ≥ 2"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir.path() / "x"));
}

TEST(Validation, OffendingFieldIsNamed) {
  ScratchDir dir;
  const std::string out = dir / "x";
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"phase-space", "--output", out}, "seed"},
      {{"sweep", "--output", out}, "seed"},
      {{"evolve", "--kappa", "-1", "--output", out}, "kappa"},
      {{"evolve", "--kappa", "1,2", "--output", out}, "kappa"},
      {{"scan", "--T", "0", "--output", out}, "T"},
      {{"scan", "--grid-phi", "0", "--output", out}, "grid_phi"},
      {{"lyapunov", "--seed", "1", "--samples", "0", "--output", out}, "samples"},
      {{"evolve", "--workers", "-2", "--output", out}, "workers"},
      {{"evolve", "--output", ""}, "output_path"},
      {{"--N", "4"}, "experiment"},
  };
  for (const auto& [args, field] : cases) {
    const auto r = invoke(args);
    EXPECT_EQ(r.status, 2) << field;
    EXPECT_NE(r.err.find(field), std::string::npos) << r.err;
  }
  EXPECT_EQ(invoke({"bogus"}).status, 2);
  EXPECT_EQ(invoke({"evolve", "--N", "abc"}).status, 2);
}

TEST(Validation, NumericalFailureExitsOne) {
  ScratchDir dir;
  const auto r = invoke({"evolve", "--N", "10", "--kappa", "1e308", "--kicks", "3", "--output",
                         dir / "x"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("numerical error"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir.path() / "x" / "evolve.csv"));
  EXPECT_FALSE(fs::exists(dir.path() / "x" / "manifest.json"));
}

TEST(Run, EvolveHasOneRowPerKick) {
  ScratchDir dir;
  ASSERT_EQ(invoke({"evolve", "--N", "50", "--kappa", "3", "--theta", "2.25", "--phi", "0.63",
                    "--kicks", "200", "--output", dir / "ev"})
                .status,
            0);
  const auto rows = lines_of(dir.path() / "ev" / "evolve.csv");
  ASSERT_EQ(rows.size(), 202u);
  EXPECT_EQ(rows[0], "n,E,C");
  EXPECT_EQ(rows[1].substr(0, 2), "0,");
  EXPECT_EQ(rows[201].substr(0, 4), "200,");
}

TEST(Run, PhaseSpaceSection) {
  ScratchDir dir;
  ASSERT_EQ(invoke({"phase-space", "--kappa", "3", "--trajectories", "300", "--kicks", "300",
                    "--seed", "7", "--output", dir / "ps"})
                .status,
            0);
  const auto rows = lines_of(dir.path() / "ps" / "phase-space.csv");
  ASSERT_EQ(rows.size(), 90001u);
  EXPECT_EQ(rows[0], "traj_id,kick,theta,phi");
  EXPECT_EQ(rows[1].substr(0, 4), "0,1,");
  EXPECT_EQ(rows.back().substr(0, 8), "299,300,");
}

TEST(Run, ScanPinnedRowAndGrid) {
  ScratchDir dir;
  ASSERT_EQ(invoke({"scan", "--N", "6", "--T", "5", "--grid-theta", "1", "--theta", "2.25",
                    "--grid-phi", "8", "--output", dir / "row"})
                .status,
            0);
  const auto row = lines_of(dir.path() / "row" / "scan.csv");
  ASSERT_EQ(row.size(), 9u);
  EXPECT_EQ(row[0], "theta,phi,E_T,C_T");
  EXPECT_EQ(row[1].substr(0, 5), "2.25,");

  ASSERT_EQ(invoke({"scan", "--N", "6", "--T", "5", "--grid-theta", "3", "--grid-phi", "4",
                    "--output", dir / "grid"})
                .status,
            0);
  EXPECT_EQ(lines_of(dir.path() / "grid" / "scan.csv").size(), 13u);
}

TEST(Run, ManifestDigestsMatchFiles) {
  ScratchDir dir;
  ASSERT_EQ(invoke({"power", "--N", "6", "--kappa", "0,3", "--T", "4", "--grid-theta", "3",
                    "--grid-phi", "4", "--samples", "4", "--kicks", "1000", "--seed", "5",
                    "--plot", "--output", dir / "pw"})
                .status,
            0);
  const auto manifest = nlohmann::json::parse(slurp(dir.path() / "pw" / "manifest.json"));
  for (const char* key : {"config", "version", "duration_s", "drift", "outputs"}) {
    EXPECT_TRUE(manifest.contains(key)) << key;
  }
  ASSERT_EQ(manifest["outputs"].size(), 2u);
  for (const auto& entry : manifest["outputs"]) {
    const fs::path file = dir.path() / "pw" / entry["path"].get<std::string>();
    EXPECT_EQ(entry["digest"], "sha256:" + sha256_file(file));
  }
  EXPECT_EQ(manifest["outputs"][0]["schema"], "power/1");
  const auto rows = lines_of(dir.path() / "pw" / "power.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "kappa,e_T,c_T,lambda");
}

TEST(Run, Sha256KnownAnswer) {
  ScratchDir dir;
  std::ofstream(dir / "abc", std::ios::binary) << "abc";
  EXPECT_EQ(sha256_file(dir / "abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Run, ByteIdenticalAcrossWorkerCounts) {
  ScratchDir dir;
  const std::vector<std::vector<std::string>> configs{
      {"scan", "--N", "8", "--T", "6", "--grid-theta", "4", "--grid-phi", "5"},
      {"sweep", "--N", "6", "--kappa", "0.5,2,4", "--T", "5", "--grid-theta", "3", "--grid-phi",
       "4", "--samples", "6", "--kicks", "1000", "--seed", "3"},
      {"phase-space", "--trajectories", "9", "--kicks", "20", "--seed", "4"},
  };
  for (const auto& base : configs) {
    std::vector<std::string> digests;
    for (const char* workers : {"1", "3", "1"}) {
      auto args = base;
      const std::string out = dir / (base[0] + "_" + workers);
      args.insert(args.end(), {"--workers", workers, "--output", out});
      ASSERT_EQ(invoke(args).status, 0) << base[0];
      digests.push_back(sha256_file(fs::path(out) / (base[0] + ".csv")));
    }
    EXPECT_EQ(digests[0], digests[1]) << base[0];
    EXPECT_EQ(digests[0], digests[2]) << base[0];
  }
}

TEST(Run, WritesNothingOutsideOutputPath) {
  ScratchDir dir;
  const fs::path previous = fs::current_path();
  fs::current_path(dir.path());
  const auto before = tree(dir.path());
  const auto r = invoke({"evolve", "--N", "6", "--kicks", "4", "--plot", "--output", "nested/out"});
  fs::current_path(previous);
  ASSERT_EQ(r.status, 0);

  std::set<fs::path> added;
  for (const auto& p : tree(dir.path())) {
    if (!before.count(p)) {
      added.insert(p);
    }
  }
  const std::set<fs::path> expected{"nested", "nested/out", "nested/out/evolve.csv",
                                    "nested/out/evolve_plot.py", "nested/out/manifest.json"};
  EXPECT_EQ(added, expected);
}

TEST(PlotScript, ReferencesSchemaColumns) {
  ScratchDir dir;
  const std::vector<std::pair<Experiment, std::vector<std::string>>> cases{
      {Experiment::Scan, {"\"E_T\"", "\"C_T\"", "pcolormesh"}},
      {Experiment::Sweep, {"\"e_T\"", "\"c_T\"", "\"lambda\"", "\"kappa\""}},
      {Experiment::Evolve, {"data[\"E\"]", "data[\"C\"]", "subplots(2, 1"}},
      {Experiment::PhaseSpace, {"scatter", "data[\"phi\"]"}},
      {Experiment::Lyapunov, {"errorbar", "stderr_est"}},
  };
  for (const auto& [experiment, needles] : cases) {
    const fs::path csv = dir.path() / (std::string(name_of(experiment)) + ".csv");
    std::ofstream out(csv);
    const auto& columns = csv_columns(experiment);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << columns[i];
    }
    out << "\n";
    out.close();
    const fs::path script = dir.path() / "plot.py";
    emit_plot_script(experiment, csv, script);
    const std::string text = slurp(script);
    EXPECT_NE(text.find(csv.filename().string()), std::string::npos);
    for (const auto& needle : needles) {
      EXPECT_NE(text.find(needle), std::string::npos) << name_of(experiment) << " " << needle;
    }
  }
}

TEST(PlotScript, SchemaMismatchReportsColumnDiff) {
  ScratchDir dir;
  std::ofstream(dir / "scan.csv") << "theta,phi,E,C_T\n1,2,3,4\n";
  try {
    emit_plot_script(Experiment::Scan, dir / "scan.csv", dir / "plot.py");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    const std::string message = e.what();
    EXPECT_NE(message.find("missing [E_T]"), std::string::npos) << message;
    EXPECT_NE(message.find("unexpected [E]"), std::string::npos) << message;
  }
  EXPECT_FALSE(fs::exists(dir.path() / "plot.py"));

  std::ofstream(dir / "evolve.csv") << "n,C,E\n";
  EXPECT_THROW(emit_plot_script(Experiment::Evolve, dir / "evolve.csv", dir / "plot.py"),
               SchemaError);
}

TEST(Binary, ExitStatusesFromRealProcess) {
  ScratchDir dir;
  auto status_of = [](const std::string& command) {
    const int raw = std::system((command + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  const std::string binary = KICKEDTOP_CLI_PATH;
  EXPECT_EQ(status_of(binary + " --help"), 0);
  EXPECT_EQ(status_of(binary + " evolve --N 1 --output " + (dir / "a")), 2);
  EXPECT_EQ(status_of(binary + " evolve --N 4 --kicks 3 --quiet --output " + (dir / "b")), 0);
  EXPECT_TRUE(fs::exists(dir.path() / "b" / "manifest.json"));
}

}  // namespace
}  // namespace qkt::cli
