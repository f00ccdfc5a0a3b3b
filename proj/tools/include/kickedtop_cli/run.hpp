#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kickedtop/classical.hpp"
#include "kickedtop_cli/config.hpp"

namespace qkt::cli {

/// CSV header of each experiment, in column order.
const std::vector<std::string>& csv_columns(Experiment experiment);

/// Versioned schema tag recorded in the manifest, e.g. "scan/1".
std::string schema_of(Experiment experiment);

struct OutputFile {
  std::string path;    // relative to the output directory
  std::string digest;  // "sha256:<hex>"
  std::string schema;
};

struct RunReport {
  std::vector<OutputFile> outputs;
  double duration_s = 0.0;
  DriftMeter drift;
};

/// Progress lines go to this sink; pass an empty function to silence them.
using ProgressSink = std::function<void(std::string_view line)>;

/// Executes a validated config: writes <experiment>.csv, the optional plot
/// script and manifest.json into config.output_path, creating the directory
/// if needed. Nothing is written anywhere else.
RunReport run(const RunConfig& config, const ProgressSink& progress = {});

/// Mismatch between a CSV header and the schema a plot expects.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes a matplotlib script rendering `csv_path` next to it at
/// `script_path`. The CSV header must match the experiment's schema; a
/// mismatch raises SchemaError listing missing and unexpected columns.
void emit_plot_script(Experiment experiment, const std::filesystem::path& csv_path,
                      const std::filesystem::path& script_path);

/// SHA-256 of a file's bytes, as lowercase hex.
std::string sha256_file(const std::filesystem::path& path);

/// Full command-line entry point. Returns the process exit status:
/// 0 success, 1 numerical failure, 2 configuration error.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qkt::cli
