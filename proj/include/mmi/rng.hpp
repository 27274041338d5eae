#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace mmi {

/// Derives an independent child seed from (seed, index) with a SplitMix64
/// scramble. Used to give every sample of a randomized sweep its own
/// substream, so results are reproducible regardless of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded random source for everything stochastic in the library. All
/// distributions are implemented by hand on top of the raw 64-bit stream
/// (no std::normal_distribution etc.), so a (seed, call sequence) pair
/// yields bit-identical values on every standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_seed(seed, index));
  }

  std::uint64_t raw() { return gen_(); }

  /// Uniform on [0, 1), 53 random bits.
  double uniform();

  /// Standard complex Gaussian: independent N(0,1) real and imaginary parts
  /// from one Box–Muller transform.
  std::complex<double> complex_normal();

  /// Standard real Gaussian (consumes one Box–Muller pair, discards half).
  double normal();

 private:
  std::mt19937_64 gen_;
};

}  // namespace mmi
