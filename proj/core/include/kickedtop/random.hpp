#pragma once

#include <cstdint>
#include <random>

namespace qkt {

/// SplitMix64 finalizer. Used to derive independent per-sample seeds from a
/// run seed and a sample index, so a sample's stream does not depend on
/// which worker draws it.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded 64-bit generator with a fixed uniform mapping (53 random bits),
/// independent of the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace qkt
