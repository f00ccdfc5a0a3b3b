#include "kickedtop/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kickedtop/parallel.hpp"

namespace qkt {

namespace {

constexpr double kSymmetricEntropyBound = 2.0 / 3.0 + 1e-8;
constexpr double kBoundSlack = 1e-10;

void require_positive(int value, const char* what) {
  if (value < 1) {
    throw std::invalid_argument(std::string(what) + " must be >= 1, got " +
                                std::to_string(value));
  }
}

void require_pairwise(const KickedTop& top) {
  if (top.system().qubits() < 2) {
    throw std::invalid_argument("pairwise entanglement needs N >= 2");
  }
}

}  // namespace

KickedTop::KickedTop(int qubits, double kappa, double p)
    : ops_(build_collective_ops(SpinSystem(qubits))), floquet_(ops_, kappa, p) {}

EntanglementSample measure(const SpinState& state) {
  const TwoQubitDensity rho = reduce_to_pair(moments(state), state.system().qubits());
  EntanglementSample out{linear_entropy(rho), concurrence(rho)};
  if (out.entropy < -kBoundSlack || out.entropy > kSymmetricEntropyBound) {
    throw NumericalError("linear entropy " + std::to_string(out.entropy) +
                         " outside [0, 2/3] for a symmetric state");
  }
  if (out.concurrence > 1.0 + kBoundSlack) {
    throw NumericalError("concurrence " + std::to_string(out.concurrence) + " exceeds 1");
  }
  out.entropy = std::max(out.entropy, 0.0);
  out.concurrence = std::min(out.concurrence, 1.0);
  return out;
}

TimeSeries time_series(const KickedTop& top, double theta, double phi, int kicks) {
  require_pairwise(top);
  if (kicks < 0) {
    throw std::invalid_argument("time_series: kick count must be >= 0");
  }
  const FloquetOperator& floquet = top.floquet();
  const SpinState initial = spin_coherent_state(top.ops(), theta, phi);
  const CVector coefficients = floquet.spectral_coefficients(initial);

  TimeSeries out;
  out.entropy.reserve(static_cast<std::size_t>(kicks) + 1);
  out.concurrence.reserve(static_cast<std::size_t>(kicks) + 1);
  for (int n = 0; n <= kicks; ++n) {
    const SpinState state =
        n == 0 ? initial : SpinState(top.system(), floquet.reconstruct(coefficients, n));
    const EntanglementSample sample = measure(state);
    out.entropy.push_back(sample.entropy);
    out.concurrence.push_back(sample.concurrence);
  }
  return out;
}

TimeAverage time_averaged(const KickedTop& top, double theta, double phi, int window) {
  require_positive(window, "time_averaged: window");
  const TimeSeries series = time_series(top, theta, phi, window);
  TimeAverage out;
  for (int n = 1; n <= window; ++n) {
    out.entropy += series.entropy[n];
    out.concurrence += series.concurrence[n];
  }
  out.entropy /= window;
  out.concurrence /= window;
  return out;
}

std::vector<int> find_revivals(std::span<const double> series, int window, double factor) {
  std::vector<int> out;
  const int size = static_cast<int>(series.size());
  std::vector<double> preceding(static_cast<std::size_t>(std::max(window, 0)));
  for (int n = std::max(window, 1); n + 1 < size; ++n) {
    if (!(series[n] > series[n - 1] && series[n] >= series[n + 1])) {
      continue;
    }
    std::copy(series.begin() + (n - window), series.begin() + n, preceding.begin());
    const auto mid = preceding.begin() + window / 2;
    std::nth_element(preceding.begin(), mid, preceding.end());
    double median = *mid;
    if (window % 2 == 0) {
      const double lower = *std::max_element(preceding.begin(), mid);
      median = 0.5 * (median + lower);
    }
    if (series[n] > factor * median) {
      out.push_back(n);
    }
  }
  return out;
}

std::vector<double> scan_theta_nodes(int count) {
  if (count < 2) {
    throw std::invalid_argument("scan_theta_nodes: need at least 2 nodes");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double theta = std::numbers::pi * i / (count - 1);
    out[i] = std::clamp(theta, kPoleClamp, std::numbers::pi - kPoleClamp);
  }
  return out;
}

std::vector<double> azimuth_nodes(int count) {
  require_positive(count, "azimuth_nodes: count");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    out[k] = -std::numbers::pi + 2.0 * std::numbers::pi * k / count;
  }
  return out;
}

ScanResult phase_space_scan(const KickedTop& top, std::span<const double> thetas,
                            std::span<const double> phis, int window, int workers) {
  require_pairwise(top);
  require_positive(window, "phase_space_scan: window");
  if (thetas.empty() || phis.empty()) {
    throw std::invalid_argument("phase_space_scan: empty node list");
  }
  ScanResult out;
  out.thetas.assign(thetas.begin(), thetas.end());
  out.phis.assign(phis.begin(), phis.end());
  out.cells.resize(thetas.size() * phis.size());

  parallel_for(out.cells.size(), workers, [&](std::size_t cell) {
    const std::size_t i = cell / phis.size();
    const std::size_t k = cell % phis.size();
    out.cells[cell] = time_averaged(top, thetas[i], phis[k], window);
  });
  return out;
}

ScanResult phase_space_scan(const KickedTop& top, int grid_theta, int grid_phi, int window,
                            int workers) {
  if (grid_theta < 2 || grid_phi < 2) {
    throw std::invalid_argument("phase_space_scan: grid sizes must be >= 2");
  }
  const auto thetas = scan_theta_nodes(grid_theta);
  const auto phis = azimuth_nodes(grid_phi);
  return phase_space_scan(top, thetas, phis, window, workers);
}

SphereQuadrature haar_quadrature(int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 2) {
    throw std::invalid_argument("haar_quadrature: node counts must be >= 2");
  }
  SphereQuadrature out;
  out.thetas.resize(static_cast<std::size_t>(n_theta));
  for (int i = 0; i < n_theta; ++i) {
    const double cos_theta = -1.0 + (i + 0.5) * 2.0 / n_theta;
    out.thetas[i] = std::acos(cos_theta);
  }
  out.phis = azimuth_nodes(n_phi);
  out.weights.assign(static_cast<std::size_t>(n_theta) * n_phi,
                     1.0 / (static_cast<double>(n_theta) * n_phi));
  return out;
}

EntanglingPower average_over(const ScanResult& scan, const SphereQuadrature& quadrature) {
  if (scan.thetas != quadrature.thetas || scan.phis != quadrature.phis ||
      scan.cells.size() != quadrature.weights.size()) {
    throw std::invalid_argument("average_over: scan was not taken on the quadrature nodes");
  }
  EntanglingPower out;
  for (std::size_t c = 0; c < scan.cells.size(); ++c) {
    out.entropy += quadrature.weights[c] * scan.cells[c].entropy;
    out.concurrence += quadrature.weights[c] * scan.cells[c].concurrence;
  }
  return out;
}

EntanglingPower entangling_power(const KickedTop& top, int window, int n_theta, int n_phi,
                                 int workers) {
  const SphereQuadrature quadrature = haar_quadrature(n_theta, n_phi);
  const ScanResult scan =
      phase_space_scan(top, quadrature.thetas, quadrature.phis, window, workers);
  return average_over(scan, quadrature);
}

std::vector<double> default_kappa_grid() {
  std::vector<double> out;
  for (int i = 1; i <= 26; ++i) {
    out.push_back(0.25 * i);
  }
  return out;
}

PowerCurve kappa_sweep(std::span<const double> kappas, const SweepConfig& config,
                       const ProgressFn& progress) {
  if (kappas.empty()) {
    throw std::invalid_argument("kappa_sweep: empty kappa list");
  }
  PowerCurve out;
  out.points.reserve(kappas.size());
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    const double kappa = kappas[i];
    const KickedTop top(config.qubits, kappa, config.p);
    const EntanglingPower power =
        entangling_power(top, config.window, config.n_theta, config.n_phi, config.workers);

    LyapunovConfig lyap = config.lyapunov;
    lyap.workers = config.workers;
    const LyapunovEstimate estimate = global_lyapunov(kappa, lyap);
    out.drift.merge(estimate.drift);

    out.points.push_back(
        {kappa, power.entropy, power.concurrence, estimate.mean, estimate.stderr_est});
    if (progress) {
      progress(i + 1, kappas.size());
    }
  }
  return out;
}

}  // namespace qkt
