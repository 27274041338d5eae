#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmi/eigenbasis.hpp"
#include "mmi/matrix.hpp"
#include "mmi/occupations.hpp"
#include "mmi/permutation.hpp"
#include "mmi/statistics.hpp"

namespace mmi {

/// Transition probability r -> s through U:
///   bosons          |perm(M)|^2 / prod_j r_j! s_j!
///   fermions        |det(M)|^2            (occupations <= 1 enforced)
///   distinguishable perm(|M|^2) / prod_j s_j!
/// with M the scattering matrix of (U, r, s). Clamped to [0, 1 + kSumTol].
double transition_probability(const UnitaryMatrix& u, const OccupationList& r,
                              const OccupationList& s, Statistics stat);

/// A full output distribution: probability for every enumerated N-particle
/// event, in enumeration order (bosonic events for boson/distinguishable
/// statistics, single-occupancy events for fermions). Construction verifies
/// the total is 1 within kSumTol.
class OutputDistribution {
 public:
  OutputDistribution(Statistics stat, OccupationList input, std::string unitary_id,
                     std::vector<std::pair<OccupationList, double>> events,
                     std::uint64_t seed, int samples);

  Statistics statistics() const { return stat_; }
  const OccupationList& input() const { return input_; }
  const std::string& unitary_id() const { return unitary_id_; }
  const std::vector<std::pair<OccupationList, double>>& events() const { return events_; }
  double total() const { return total_; }

  /// Averaging metadata: 0/1 for a single deterministic evaluation.
  std::uint64_t seed() const { return seed_; }
  int samples() const { return samples_; }

 private:
  Statistics stat_;
  OccupationList input_;
  std::string unitary_id_;
  std::vector<std::pair<OccupationList, double>> events_;
  double total_;
  std::uint64_t seed_;
  int samples_;
};

/// Evaluates every output event of U for the given input and statistics.
OutputDistribution output_distribution(const UnitaryMatrix& u, const OccupationList& r,
                                       Statistics stat, const std::string& unitary_id);

/// Mean distribution over `samples` randomized eigenbases of p, each composed
/// as U_i = Theta * A_i * Sigma with A_i = randomized_eigenbasis(p,
/// derive_seed(seed, i)). Per-event running mean in a fixed order, so the
/// result is a pure function of (p, r, theta, sigma, stat, samples, seed).
OutputDistribution mean_distribution_over_random_bases(
    const ModePermutation& p, const OccupationList& r, const PhaseVector& theta,
    const PhaseVector& sigma, Statistics stat, int samples, std::uint64_t seed);

}  // namespace mmi
