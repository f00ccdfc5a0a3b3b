#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kickedtop/random.hpp"

namespace qkt {

/// Point (X, Y, Z) on the unit sphere; X = <Jx>/j etc. in the classical limit.
struct PhasePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  static PhasePoint from_polar(double theta, double phi);
  static PhasePoint from_vector(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

  /// Polar angle in [0, pi].
  double theta() const;
  /// Azimuth in [-pi, pi].
  double phi() const;
  double norm() const;
  Eigen::Vector3d vec() const { return {x, y, z}; }
};

using TangentVector = Eigen::Vector3d;

/// Great-circle distance between two points of the sphere.
double angular_distance(const PhasePoint& a, const PhasePoint& b);

/// Accumulates how far kicked points strayed from the unit sphere before
/// being pulled back.
struct DriftMeter {
  double cumulative = 0.0;
  long renormalizations = 0;

  void merge(const DriftMeter& other) {
    cumulative += other.cumulative;
    renormalizations += other.renormalizations;
  }
};

/// One period of the classical top:
///   X' =  Z cos(kX) + Y sin(kX)
///   Y' = -Z sin(kX) + Y cos(kX)
///   Z' = -X
/// The result is pulled back to the sphere when its norm drifts by more
/// than 1e-15.
PhasePoint kick(const PhasePoint& p, double kappa);
PhasePoint kick(const PhasePoint& p, double kappa, DriftMeter& drift);

/// d(X', Y', Z') / d(X, Y, Z), in ambient coordinates.
Eigen::Matrix3d jacobian(const PhasePoint& p, double kappa);

/// Points after kicks 1..kicks (the start point is not repeated).
std::vector<PhasePoint> trajectory(const PhasePoint& start, double kappa, int kicks);
std::vector<PhasePoint> trajectory(const PhasePoint& start, double kappa, int kicks,
                                   DriftMeter& drift);

/// Uniform on the sphere: cos(theta) ~ U[-1, 1), phi ~ U[-pi, pi).
PhasePoint sample_sphere(Rng& rng);

struct LyapunovConfig {
  int kicks = 10000;
  int transient = 100;
  int samples = 100;
  std::uint64_t seed = 0;
  int workers = 0;
};

/// Largest Lyapunov exponent per kick by the Benettin method: after
/// `transient` kicks a random unit tangent vector (drawn from `seed`) is
/// carried along with the Jacobian and renormalized every kick;
/// lambda = (1/kicks) sum log |v|.
double lyapunov(const PhasePoint& start, double kappa, int kicks, int transient,
                std::uint64_t seed, DriftMeter* drift = nullptr);

struct LyapunovEstimate {
  double mean = 0.0;
  double stderr_est = 0.0;
  DriftMeter drift;
};

/// Mean of lyapunov() over `samples` sphere-uniform starting points. Sample i
/// uses the stream mix_seed(seed, i), and the mean is accumulated in sample
/// order, so the value does not depend on the worker count.
LyapunovEstimate global_lyapunov(double kappa, const LyapunovConfig& config);

struct SectionPoint {
  int trajectory = 0;
  int kick = 0;
  double theta = 0.0;
  double phi = 0.0;
};

struct PoincareSection {
  std::vector<SectionPoint> points;  // trajectory-major, kick-minor
  DriftMeter drift;
};

/// Stroboscopic section: `trajectories` random starts (stream
/// mix_seed(seed, i) for start i), `kicks` points each.
PoincareSection poincare_section(double kappa, int trajectories, int kicks,
                                 std::uint64_t seed, int workers = 0);

}  // namespace qkt
