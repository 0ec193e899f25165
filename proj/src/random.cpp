#include "qso/random.hpp"

#include <cmath>
#include <vector>

namespace qso {

double Rng::exponential() { return -std::log(uniform()); }

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = engine_.max() - engine_.max() % n;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % n;
}

SimplexPoint Rng::interior_point(int m) {
  std::vector<double> c(static_cast<std::size_t>(m));
  for (double& v : c) v = exponential();
  return SimplexPoint::normalized(std::move(c));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace qso
