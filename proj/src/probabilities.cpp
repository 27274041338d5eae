#include "mmi/probabilities.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mmi/catalog.hpp"
#include "mmi/kernels.hpp"
#include "mmi/rng.hpp"
#include "mmi/tolerances.hpp"

namespace mmi {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

double occupation_factorial_product(const OccupationList& occ) {
  double f = 1.0;
  for (const int k : occ) f *= factorial(k);
  return f;
}

double clamp_probability(double p, const char* who) {
  if (!std::isfinite(p))
    throw std::runtime_error(std::string(who) + ": non-finite probability");
  if (p < 0.0) {
    // |perm|^2-style quantities cannot be negative; anything below zero is
    // rounding noise from the distinguishable permanent and must stay tiny.
    if (p < -kSumTol)
      throw std::runtime_error(std::string(who) + ": probability below zero beyond tolerance");
    return 0.0;
  }
  if (p > 1.0 + kSumTol)
    throw std::runtime_error(std::string(who) + ": probability above one beyond tolerance");
  return p;
}

}  // namespace

double transition_probability(const UnitaryMatrix& u, const OccupationList& r,
                              const OccupationList& s, Statistics stat) {
  if (r.modes() != u.dim() || s.modes() != u.dim())
    throw std::invalid_argument("transition_probability: mode count mismatch");
  if (r.total() != s.total())
    throw std::invalid_argument("transition_probability: particle number mismatch");
  if (stat == Statistics::kFermion && (!r.single_occupancy() || !s.single_occupancy()))
    throw std::invalid_argument("transition_probability: fermionic occupations must be <= 1");

  const ComplexMatrix m = scattering_matrix(u, r, s);
  double p = 0.0;
  switch (stat) {
    case Statistics::kBoson:
      p = std::norm(kernels::permanent(m)) /
          (occupation_factorial_product(r) * occupation_factorial_product(s));
      break;
    case Statistics::kFermion:
      p = std::norm(kernels::determinant(m));
      break;
    case Statistics::kDistinguishable:
      p = kernels::permanent_of_squared_moduli(m) / occupation_factorial_product(s);
      break;
  }
  return clamp_probability(p, "transition_probability");
}

OutputDistribution::OutputDistribution(Statistics stat, OccupationList input,
                                       std::string unitary_id,
                                       std::vector<std::pair<OccupationList, double>> events,
                                       std::uint64_t seed, int samples)
    : stat_(stat),
      input_(std::move(input)),
      unitary_id_(std::move(unitary_id)),
      events_(std::move(events)),
      total_(0.0),
      seed_(seed),
      samples_(samples) {
  for (const auto& [event, probability] : events_) {
    if (probability < 0.0)
      throw std::invalid_argument("OutputDistribution: negative probability");
    total_ += probability;
  }
  if (std::abs(total_ - 1.0) > kSumTol) {
    std::ostringstream msg;
    msg << "OutputDistribution: probabilities sum to " << total_
        << ", off from 1 beyond tolerance " << kSumTol;
    throw std::invalid_argument(msg.str());
  }
}

namespace {

std::vector<OccupationList> enumerate_outputs(int n, int particles, Statistics stat) {
  std::vector<OccupationList> out;
  if (stat == Statistics::kFermion) {
    FermionicOutputs gen(n, particles);
    while (auto s = gen.next()) out.push_back(std::move(*s));
  } else {
    BosonicOutputs gen(n, particles);
    while (auto s = gen.next()) out.push_back(std::move(*s));
  }
  return out;
}

}  // namespace

OutputDistribution output_distribution(const UnitaryMatrix& u, const OccupationList& r,
                                       Statistics stat, const std::string& unitary_id) {
  std::vector<std::pair<OccupationList, double>> events;
  for (OccupationList& s : enumerate_outputs(u.dim(), r.total(), stat)) {
    const double p = transition_probability(u, r, s, stat);
    events.emplace_back(std::move(s), p);
  }
  return OutputDistribution(stat, r, unitary_id, std::move(events), 0, 1);
}

OutputDistribution mean_distribution_over_random_bases(
    const ModePermutation& p, const OccupationList& r, const PhaseVector& theta,
    const PhaseVector& sigma, Statistics stat, int samples, std::uint64_t seed) {
  if (!is_invariant(r, p))
    throw std::invalid_argument(
        "mean_distribution_over_random_bases: input must be invariant under the permutation");
  if (samples < 1)
    throw std::invalid_argument("mean_distribution_over_random_bases: need samples >= 1");

  const std::vector<OccupationList> outputs =
      enumerate_outputs(p.modes(), r.total(), stat);
  std::vector<double> mean(outputs.size(), 0.0);
  for (int i = 0; i < samples; ++i) {
    const EigenbasisRealization a = randomized_eigenbasis(p, derive_seed(seed, static_cast<std::uint64_t>(i)));
    const UnitaryMatrix u = compose(theta, a, sigma);
    for (std::size_t e = 0; e < outputs.size(); ++e) {
      const double value = transition_probability(u, r, outputs[e], stat);
      mean[e] += (value - mean[e]) / static_cast<double>(i + 1);
    }
  }

  std::vector<std::pair<OccupationList, double>> events;
  events.reserve(outputs.size());
  for (std::size_t e = 0; e < outputs.size(); ++e)
    events.emplace_back(outputs[e], mean[e]);
  std::ostringstream id;
  id << "eigenbasis:perm=" << p.cycle_str() << ",samples=" << samples << ",seed=" << seed;
  return OutputDistribution(stat, r, id.str(), std::move(events), seed, samples);
}

}  // namespace mmi
