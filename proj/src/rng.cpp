#include "mmi/rng.hpp"

#include <cmath>
#include <numbers>

namespace mmi {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // SplitMix64 finalizer over the combined state; the odd multiplier mixes
  // the index so that consecutive indices land far apart.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(raw() >> 11) * 0x1.0p-53;
}

std::complex<double> Rng::complex_normal() {
  // Box–Muller. The first uniform is shifted into (0, 1] to keep log finite.
  const double u1 = static_cast<double>((raw() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

double Rng::normal() { return complex_normal().real(); }

}  // namespace mmi
