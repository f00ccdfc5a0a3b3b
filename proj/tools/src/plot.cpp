#include <algorithm>
#include <fstream>
#include <sstream>

#include "kickedtop_cli/run.hpp"

namespace qkt::cli {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> read_header(const fs::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) {
    throw SchemaError("cannot read '" + csv_path.string() + "'");
  }
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  std::vector<std::string> columns;
  std::stringstream fields(line);
  for (std::string field; std::getline(fields, field, ',');) {
    columns.push_back(field);
  }
  return columns;
}

std::string join(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += (i ? ", " : "") + items[i];
  }
  return out + "]";
}

std::vector<std::string> absent_from(const std::vector<std::string>& items,
                                     const std::vector<std::string>& reference) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    if (std::find(reference.begin(), reference.end(), item) == reference.end()) {
      out.push_back(item);
    }
  }
  return out;
}

void check_schema(Experiment experiment, const fs::path& csv_path) {
  const auto& expected = csv_columns(experiment);
  const auto actual = read_header(csv_path);
  if (actual == expected) {
    return;
  }
  const auto missing = absent_from(expected, actual);
  const auto unexpected = absent_from(actual, expected);
  std::string message = "schema mismatch for " + std::string(name_of(experiment)) + " CSV '" +
                        csv_path.string() + "': ";
  if (missing.empty() && unexpected.empty()) {
    message += "column order " + join(actual) + ", expected " + join(expected);
  } else {
    message += "missing " + join(missing) + ", unexpected " + join(unexpected);
  }
  throw SchemaError(message);
}

constexpr const char* kPrelude = R"(from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

HERE = Path(__file__).resolve().parent
)";

constexpr const char* kLoad = R"(
data = np.genfromtxt(HERE / CSV, delimiter=",", names=True)
)";

constexpr const char* kSave = R"(
fig.tight_layout()
out = HERE / (Path(CSV).stem + ".png")
fig.savefig(out, dpi=150)
print(out)
)";

std::string body_for(Experiment experiment) {
  switch (experiment) {
    case Experiment::PhaseSpace:
      return R"(
fig, ax = plt.subplots(figsize=(6, 5))
ax.scatter(data["phi"], data["theta"], s=0.2, c="k", linewidths=0)
ax.set_xlim(-np.pi, np.pi)
ax.set_ylim(np.pi, 0)
ax.set_xlabel(r"$\phi$")
ax.set_ylabel(r"$\theta$")
ax.set_title("stroboscopic section")
)";
    case Experiment::Evolve:
      return R"(
fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
top.plot(data["n"], data["E"], lw=1)
top.set_ylabel("linear entropy E")
bottom.plot(data["n"], data["C"], lw=1)
bottom.set_ylabel("concurrence C")
bottom.set_xlabel("kick n")
)";
    case Experiment::Scan:
      return R"(
thetas = np.unique(data["theta"])
phis = np.unique(data["phi"])
shape = (len(thetas), len(phis))
fig, axes = plt.subplots(1, 2, figsize=(11, 4.5))
for ax, column, label in zip(axes, ("E_T", "C_T"), ("$E_T$", "$C_T$")):
    grid = data[column].reshape(shape)
    if len(thetas) == 1:
        ax.plot(phis, grid[0], lw=1)
        ax.set_ylabel(label)
    else:
        mesh = ax.pcolormesh(phis, thetas, grid, shading="nearest", cmap="viridis")
        ax.set_ylim(np.pi, 0)
        ax.set_ylabel(r"$\theta$")
        fig.colorbar(mesh, ax=ax, label=label)
    ax.set_xlabel(r"$\phi$")
)";
    case Experiment::Power:
    case Experiment::Sweep:
      return R"(
fig, axes = plt.subplots(3, 1, sharex=True, figsize=(6, 8))
for ax, column, label in zip(axes, ("e_T", "c_T", "lambda"),
                             ("$e_T$", "$c_T$", r"$\bar\lambda$")):
    ax.plot(data["kappa"], data[column], "o-", ms=3, lw=1)
    ax.set_ylabel(label)
axes[-1].set_xlabel(r"$\kappa$")
)";
    case Experiment::Lyapunov:
      return R"(
fig, ax = plt.subplots(figsize=(6, 4))
ax.errorbar(data["kappa"], data["lambda"], yerr=data["stderr_est"], fmt="o-", ms=3, lw=1)
ax.set_xlabel(r"$\kappa$")
ax.set_ylabel(r"$\bar\lambda$")
)";
  }
  return {};
}

}  // namespace

void emit_plot_script(Experiment experiment, const fs::path& csv_path,
                      const fs::path& script_path) {
  check_schema(experiment, csv_path);
  std::ofstream out(script_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + script_path.string() + "'");
  }
  out << kPrelude << "CSV = \"" << csv_path.filename().string() << "\"\n"
      << kLoad << body_for(experiment) << kSave;
  if (!out) {
    throw std::runtime_error("cannot write '" + script_path.string() + "'");
  }
}

}  // namespace qkt::cli
