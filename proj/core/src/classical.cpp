#include "kickedtop/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kickedtop/parallel.hpp"

namespace qkt {

namespace {

constexpr double kDriftThreshold = 1e-15;

PhasePoint kick_impl(const PhasePoint& p, double kappa, DriftMeter* drift) {
  const double c = std::cos(kappa * p.x);
  const double s = std::sin(kappa * p.x);
  PhasePoint out{p.z * c + p.y * s, -p.z * s + p.y * c, -p.x};

  const double norm = out.norm();
  const double excess = std::abs(norm - 1.0);
  if (excess > kDriftThreshold) {
    out.x /= norm;
    out.y /= norm;
    out.z /= norm;
    if (drift != nullptr) {
      drift->cumulative += excess;
      ++drift->renormalizations;
    }
  }
  return out;
}

TangentVector random_unit_tangent(Rng& rng) {
  TangentVector v;
  do {
    v << rng.normal(), rng.normal(), rng.normal();
  } while (v.norm() == 0.0);
  return v.normalized();
}

}  // namespace

PhasePoint PhasePoint::from_polar(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double PhasePoint::theta() const { return std::acos(std::clamp(z / norm(), -1.0, 1.0)); }

double PhasePoint::phi() const { return std::atan2(y, x); }

double PhasePoint::norm() const { return std::sqrt(x * x + y * y + z * z); }

double angular_distance(const PhasePoint& a, const PhasePoint& b) {
  // atan2 form stays accurate for nearly equal and nearly opposite points.
  const Eigen::Vector3d u = a.vec().normalized();
  const Eigen::Vector3d v = b.vec().normalized();
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

PhasePoint kick(const PhasePoint& p, double kappa) { return kick_impl(p, kappa, nullptr); }

PhasePoint kick(const PhasePoint& p, double kappa, DriftMeter& drift) {
  return kick_impl(p, kappa, &drift);
}

Eigen::Matrix3d jacobian(const PhasePoint& p, double kappa) {
  const double c = std::cos(kappa * p.x);
  const double s = std::sin(kappa * p.x);
  Eigen::Matrix3d jac;
  jac << kappa * (p.y * c - p.z * s), s, c,
        -kappa * (p.z * c + p.y * s), c, -s,
        -1.0, 0.0, 0.0;
  return jac;
}

std::vector<PhasePoint> trajectory(const PhasePoint& start, double kappa, int kicks,
                                   DriftMeter& drift) {
  if (kicks < 1) {
    throw std::invalid_argument("trajectory: kick count must be >= 1");
  }
  std::vector<PhasePoint> out;
  out.reserve(static_cast<std::size_t>(kicks));
  PhasePoint p = start;
  for (int n = 0; n < kicks; ++n) {
    p = kick(p, kappa, drift);
    out.push_back(p);
  }
  return out;
}

std::vector<PhasePoint> trajectory(const PhasePoint& start, double kappa, int kicks) {
  DriftMeter unused;
  return trajectory(start, kappa, kicks, unused);
}

PhasePoint sample_sphere(Rng& rng) {
  const double cos_theta = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return PhasePoint::from_polar(std::acos(cos_theta), phi);
}

double lyapunov(const PhasePoint& start, double kappa, int kicks, int transient,
                std::uint64_t seed, DriftMeter* drift) {
  if (kicks < 1 || transient < 0) {
    throw std::invalid_argument("lyapunov: need kicks >= 1 and transient >= 0");
  }
  DriftMeter local;
  PhasePoint p = start;
  for (int n = 0; n < transient; ++n) {
    p = kick(p, kappa, local);
  }

  Rng rng(seed);
  TangentVector v = random_unit_tangent(rng);
  double log_sum = 0.0;
  for (int n = 0; n < kicks; ++n) {
    v = jacobian(p, kappa) * v;
    p = kick(p, kappa, local);
    const double growth = v.norm();
    log_sum += std::log(growth);
    v /= growth;
  }
  if (drift != nullptr) {
    drift->merge(local);
  }
  return log_sum / kicks;
}

LyapunovEstimate global_lyapunov(double kappa, const LyapunovConfig& config) {
  if (config.samples < 1) {
    throw std::invalid_argument("global_lyapunov: samples must be >= 1");
  }
  const auto samples = static_cast<std::size_t>(config.samples);
  std::vector<double> values(samples);
  std::vector<DriftMeter> drifts(samples);

  parallel_for(samples, config.workers, [&](std::size_t i) {
    Rng rng(mix_seed(config.seed, i));
    const PhasePoint start = sample_sphere(rng);
    const std::uint64_t tangent_seed = mix_seed(config.seed ^ 0x5bd1e995ULL, i);
    values[i] = lyapunov(start, kappa, config.kicks, config.transient, tangent_seed,
                         &drifts[i]);
  });

  LyapunovEstimate out;
  double sum = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    sum += values[i];
    out.drift.merge(drifts[i]);
  }
  out.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    double sq = 0.0;
    for (double v : values) {
      sq += (v - out.mean) * (v - out.mean);
    }
    out.stderr_est = std::sqrt(sq / static_cast<double>(samples - 1) /
                               static_cast<double>(samples));
  }
  return out;
}

PoincareSection poincare_section(double kappa, int trajectories, int kicks,
                                 std::uint64_t seed, int workers) {
  if (trajectories < 1 || kicks < 1) {
    throw std::invalid_argument("poincare_section: counts must be positive");
  }
  const auto n_traj = static_cast<std::size_t>(trajectories);
  const auto n_kicks = static_cast<std::size_t>(kicks);

  PoincareSection out;
  out.points.resize(n_traj * n_kicks);
  std::vector<DriftMeter> drifts(n_traj);

  parallel_for(n_traj, workers, [&](std::size_t t) {
    Rng rng(mix_seed(seed, t));
    const PhasePoint start = sample_sphere(rng);
    const auto path = trajectory(start, kappa, kicks, drifts[t]);
    for (std::size_t k = 0; k < n_kicks; ++k) {
      out.points[t * n_kicks + k] = {static_cast<int>(t), static_cast<int>(k + 1),
                                     path[k].theta(), path[k].phi()};
    }
  });

  for (const auto& d : drifts) {
    out.drift.merge(d);
  }
  return out;
}

}  // namespace qkt
