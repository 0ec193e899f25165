#pragma once

#include <cstdint>
#include <random>

#include "qso/simplex.hpp"

namespace qso {

/// Seeded source for every randomized experiment.
///
/// Only the engine is taken from <random>; the conversions to doubles are
/// spelled out here so that a seed reproduces the same stream regardless of
/// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double exponential();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Flat Dirichlet draw: normalized exponentials, strictly interior.
  SimplexPoint interior_point(int m);

 private:
  std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream tag so that independent checks sharing a
/// user seed do not reuse a stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qso
