#include "mmi/suppression.hpp"

#include <map>
#include <stdexcept>

#include "mmi/eigenbasis.hpp"

namespace mmi {

namespace {

void check_phase_count(std::span<const EigenPhase> column_phases, int n, const char* who) {
  if (static_cast<int>(column_phases.size()) != n)
    throw std::invalid_argument(std::string(who) + ": eigenphase count does not match mode count");
}

void check_fermionic_input(const ModePermutation& p, const OccupationList& r, const char* who) {
  if (!is_invariant(r, p))
    throw std::invalid_argument(std::string(who) + ": input must be invariant under the permutation");
  if (!r.single_occupancy())
    throw std::invalid_argument(std::string(who) + ": input must be single-occupancy");
}

}  // namespace

EigenvalueMultiset final_eigenvalue_distribution(std::span<const EigenPhase> column_phases,
                                                 const OccupationList& s) {
  check_phase_count(column_phases, s.modes(), "final_eigenvalue_distribution");
  EigenvalueMultiset out;
  for (int j = 0; j < s.modes(); ++j)
    if (s[j] > 0) out.insert(column_phases[static_cast<std::size_t>(j)], s[j]);
  return out;
}

EigenvalueMultiset final_eigenvalue_distribution(const ModePermutation& p,
                                                 const OccupationList& s) {
  return final_eigenvalue_distribution(canonical_column_phases(p), s);
}

EigenvalueMultiset initial_eigenvalue_distribution(const ModePermutation& p,
                                                   const OccupationList& r) {
  check_fermionic_input(p, r, "initial_eigenvalue_distribution");
  if (r.modes() != p.modes())
    throw std::invalid_argument("initial_eigenvalue_distribution: mode count mismatch");
  EigenvalueMultiset out;
  for (const auto& cycle : p.cycles()) {
    // Invariance + single occupancy make each cycle fully occupied or empty.
    if (r[cycle.front()] == 0) continue;
    const auto m = static_cast<std::int64_t>(cycle.size());
    for (std::int64_t k = 0; k < m; ++k) out.insert(EigenPhase::root_of_unity(k, m));
  }
  return out;
}

bool single_particle_forbidden(std::span<const EigenPhase> column_phases,
                               const ModePermutation& p, const OccupationList& r,
                               const OccupationList& s) {
  if (!is_invariant(r, p))
    throw std::invalid_argument("single_particle_forbidden: input must be invariant");
  const EigenvalueMultiset lambda_s = final_eigenvalue_distribution(column_phases, s);

  // Particles per cycle length.
  std::map<std::int64_t, int> particles_by_length;
  for (const auto& cycle : p.cycles()) {
    int in_cycle = 0;
    for (const int j : cycle) in_cycle += r[j];
    if (in_cycle > 0) particles_by_length[static_cast<std::int64_t>(cycle.size())] += in_cycle;
  }

  for (const auto& [length, particles] : particles_by_length)
    if (lambda_s.count_power_one(length) < particles) return true;
  return false;
}

bool single_particle_forbidden(const ModePermutation& p, const OccupationList& r,
                               const OccupationList& s) {
  return single_particle_forbidden(canonical_column_phases(p), p, r, s);
}

bool boson_law_suppressed(std::span<const EigenPhase> column_phases,
                          const OccupationList& s) {
  return !final_eigenvalue_distribution(column_phases, s).product_phase().is_one();
}

bool boson_law_suppressed(const ModePermutation& p, const OccupationList& s) {
  return boson_law_suppressed(canonical_column_phases(p), s);
}

bool fermion_adapted_suppressed(std::span<const EigenPhase> column_phases,
                                const ModePermutation& p, const OccupationList& r,
                                const OccupationList& s) {
  check_fermionic_input(p, r, "fermion_adapted_suppressed");
  const int parity = induced_transposition_parity(r, p);
  const EigenPhase target = parity == 1 ? EigenPhase() : EigenPhase(1, 2);
  return !(final_eigenvalue_distribution(column_phases, s).product_phase() == target);
}

bool fermion_adapted_suppressed(const ModePermutation& p, const OccupationList& r,
                                const OccupationList& s) {
  return fermion_adapted_suppressed(canonical_column_phases(p), p, r, s);
}

bool fermion_extended_suppressed(std::span<const EigenPhase> column_phases,
                                 const ModePermutation& p, const OccupationList& r,
                                 const OccupationList& s) {
  check_fermionic_input(p, r, "fermion_extended_suppressed");
  const EigenvalueMultiset lambda_s = final_eigenvalue_distribution(column_phases, s);
  return !(lambda_s == initial_eigenvalue_distribution(p, r));
}

bool fermion_extended_suppressed(const ModePermutation& p, const OccupationList& r,
                                 const OccupationList& s) {
  return fermion_extended_suppressed(canonical_column_phases(p), p, r, s);
}

bool pure_state_law_suppressed(const EigenPhase& phi,
                               std::span<const EigenPhase> column_phases,
                               const OccupationList& s) {
  return !(final_eigenvalue_distribution(column_phases, s).product_phase() == phi);
}

bool pure_state_law_suppressed(const EigenPhase& phi, const ModePermutation& p,
                               const OccupationList& s) {
  return pure_state_law_suppressed(phi, canonical_column_phases(p), s);
}

const char* domain_label(Domain d) {
  switch (d) {
    case Domain::kI: return "I";
    case Domain::kII: return "II";
    case Domain::kIII: return "III";
    case Domain::kIV: return "IV";
    case Domain::kV: return "V";
  }
  throw std::logic_error("domain_label: bad enum value");
}

LawVerdict classify_event(std::span<const EigenPhase> column_phases,
                          const ModePermutation& p, const OccupationList& r,
                          const OccupationList& s, Statistics stat) {
  LawVerdict verdict{s};
  verdict.single_particle_forbidden = single_particle_forbidden(column_phases, p, r, s);

  switch (stat) {
    case Statistics::kBoson: {
      verdict.boson_suppressed = boson_law_suppressed(column_phases, s);
      if (verdict.single_particle_forbidden)
        verdict.domain = verdict.boson_suppressed ? Domain::kII : Domain::kI;
      else
        verdict.domain = verdict.boson_suppressed ? Domain::kIII : Domain::kIV;
      verdict.law_predicted = verdict.single_particle_forbidden || verdict.boson_suppressed;
      break;
    }
    case Statistics::kFermion: {
      verdict.fermion_adapted_suppressed =
          fermion_adapted_suppressed(column_phases, p, r, s);
      verdict.fermion_extended_suppressed =
          fermion_extended_suppressed(column_phases, p, r, s);
      // Two provable inclusions, kept as hard runtime invariants: the adapted
      // law never fires without the extended law, and a single-particle
      // forbidden event always differs from the initial distribution.
      if (verdict.fermion_adapted_suppressed && !verdict.fermion_extended_suppressed)
        throw std::logic_error("classify_event: adapted law fired without the extended law");
      if (verdict.single_particle_forbidden && !verdict.fermion_extended_suppressed)
        throw std::logic_error(
            "classify_event: single-particle forbidden event not flagged by the extended law");
      if (verdict.single_particle_forbidden)
        verdict.domain = verdict.fermion_adapted_suppressed ? Domain::kII : Domain::kI;
      else if (verdict.fermion_adapted_suppressed)
        verdict.domain = Domain::kIII;
      else if (verdict.fermion_extended_suppressed)
        verdict.domain = Domain::kIV;
      else
        verdict.domain = Domain::kV;
      verdict.law_predicted =
          verdict.single_particle_forbidden || verdict.fermion_extended_suppressed;
      break;
    }
    case Statistics::kDistinguishable: {
      verdict.domain = verdict.single_particle_forbidden ? Domain::kI : Domain::kIV;
      verdict.law_predicted = verdict.single_particle_forbidden;
      break;
    }
  }
  return verdict;
}

LawVerdict classify_event(const ModePermutation& p, const OccupationList& r,
                          const OccupationList& s, Statistics stat) {
  return classify_event(canonical_column_phases(p), p, r, s, stat);
}

}  // namespace mmi
