#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "kickedtop/classical.hpp"
#include "kickedtop/entanglement.hpp"
#include "kickedtop/spin.hpp"

namespace qkt {

/// Operators and Floquet unitary for one (N, kappa, p), built once and
/// shared read-only by every initial state of an experiment.
class KickedTop {
 public:
  KickedTop(int qubits, double kappa, double p = std::numbers::pi / 2);

  const SpinSystem& system() const { return ops_.system; }
  const CollectiveOperators& ops() const { return ops_; }
  const FloquetOperator& floquet() const { return floquet_; }
  double kappa() const { return floquet_.kappa(); }

 private:
  CollectiveOperators ops_;
  FloquetOperator floquet_;
};

struct EntanglementSample {
  double entropy = 0.0;
  double concurrence = 0.0;
};

/// Linear entropy and concurrence of the qubit pair of a symmetric state.
/// Roundoff below zero is clamped; values outside the symmetric-state bounds
/// (E > 2/3 + 1e-8, C > 1 + 1e-10) raise NumericalError.
EntanglementSample measure(const SpinState& state);

/// E(n), C(n) for n = 0..kicks, indexed by n.
struct TimeSeries {
  std::vector<double> entropy;
  std::vector<double> concurrence;

  std::size_t size() const { return entropy.size(); }
};

/// Kicked evolution of the coherent state |theta, phi>.
TimeSeries time_series(const KickedTop& top, double theta, double phi, int kicks);

struct TimeAverage {
  double entropy = 0.0;
  double concurrence = 0.0;
};

/// Arithmetic means of E(n) and C(n) over kicks n = 1..window. Kick 0 is
/// left out: a coherent state is unentangled there by construction.
TimeAverage time_averaged(const KickedTop& top, double theta, double phi, int window);

/// Kicks n at which the series has a local maximum (s[n] > s[n-1] and
/// s[n] >= s[n+1]) exceeding `factor` times the median of the `window`
/// preceding values. Only n >= window are considered.
std::vector<int> find_revivals(std::span<const double> series, int window = 20,
                               double factor = 5.0);

/// Polar nodes of a scan grid: evenly spaced over [0, pi], clamped to
/// [1e-6, pi - 1e-6] so the poles are not sampled degenerately.
std::vector<double> scan_theta_nodes(int count);

/// phi_k = -pi + 2 pi k / count, k = 0..count-1.
std::vector<double> azimuth_nodes(int count);

inline constexpr double kPoleClamp = 1e-6;

struct ScanResult {
  std::vector<double> thetas;
  std::vector<double> phis;
  std::vector<TimeAverage> cells;  // theta-major

  const TimeAverage& at(std::size_t theta_index, std::size_t phi_index) const {
    return cells[theta_index * phis.size() + phi_index];
  }
};

/// time_averaged over every (theta, phi) node pair. Cells are independent and
/// are written to fixed slots, so the result does not depend on `workers`.
ScanResult phase_space_scan(const KickedTop& top, std::span<const double> thetas,
                            std::span<const double> phis, int window, int workers = 0);

ScanResult phase_space_scan(const KickedTop& top, int grid_theta, int grid_phi, int window,
                            int workers = 0);

/// Product rule for the uniform measure on the sphere: midpoint nodes in
/// cos(theta) over [-1, 1], evenly spaced phi over [-pi, pi), equal weights
/// summing to 1.
struct SphereQuadrature {
  std::vector<double> thetas;
  std::vector<double> phis;
  std::vector<double> weights;  // theta-major, one per node pair
};

SphereQuadrature haar_quadrature(int n_theta, int n_phi);

struct EntanglingPower {
  double entropy = 0.0;      // e_T
  double concurrence = 0.0;  // c_T
};

/// Weighted mean of scan cells; the scan must have been taken on the
/// quadrature's nodes.
EntanglingPower average_over(const ScanResult& scan, const SphereQuadrature& quadrature);

/// Time-averaged entanglement further averaged over coherent initial states.
EntanglingPower entangling_power(const KickedTop& top, int window, int n_theta, int n_phi,
                                 int workers = 0);

struct PowerPoint {
  double kappa = 0.0;
  double entropy = 0.0;      // e_T
  double concurrence = 0.0;  // c_T
  double lambda = 0.0;       // global Lyapunov exponent
  double lambda_stderr = 0.0;
};

struct SweepConfig {
  int qubits = 36;
  int window = 50;
  int n_theta = 32;
  int n_phi = 64;
  double p = std::numbers::pi / 2;
  LyapunovConfig lyapunov;
  int workers = 0;
};

struct PowerCurve {
  std::vector<PowerPoint> points;
  DriftMeter drift;
};

/// 0.25, 0.5, ..., 6.5.
std::vector<double> default_kappa_grid();

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// entangling_power and global_lyapunov at every kappa.
PowerCurve kappa_sweep(std::span<const double> kappas, const SweepConfig& config,
                       const ProgressFn& progress = {});

}  // namespace qkt
