#pragma once

#include <optional>
#include <span>
#include <string>

#include "mmi/occupations.hpp"
#include "mmi/permutation.hpp"
#include "mmi/phase.hpp"
#include "mmi/statistics.hpp"

namespace mmi {

// Suppression-law predicates. Every predicate is a pure function of exact
// data — the permutation, occupation lists, and rational eigenphases — and
// never consults floating-point matrix entries.
//
// Each law takes the per-column eigenphase assignment of the eigenbasis in
// use. The (p, ...) convenience overloads use the canonical assignment,
// which is shared by every realization produced by canonical_eigenbasis /
// randomized_eigenbasis (randomization mixes only within degenerate blocks).

/// Lambda(s) = {lambda_{d_1(s)}, ..., lambda_{d_N(s)}}: the eigenvalue
/// attached to each occupied output mode, with multiplicity.
EigenvalueMultiset final_eigenvalue_distribution(std::span<const EigenPhase> column_phases,
                                                 const OccupationList& s);
EigenvalueMultiset final_eigenvalue_distribution(const ModePermutation& p,
                                                 const OccupationList& s);

/// Lambda_ini: multiset sum over occupied cycles — each occupied cycle of
/// length m contributes all m-th roots of unity. Requires invariant
/// single-occupancy r (the fermionic setting it belongs to).
EigenvalueMultiset initial_eigenvalue_distribution(const ModePermutation& p,
                                                   const OccupationList& r);

/// True iff single-particle dynamics alone forbid r -> s: for some cycle
/// length m_l, fewer output eigenvalues satisfy lambda^{m_l} = 1 than there
/// are particles starting in length-m_l cycles. Implies zero probability for
/// every particle type.
bool single_particle_forbidden(std::span<const EigenPhase> column_phases,
                               const ModePermutation& p, const OccupationList& r,
                               const OccupationList& s);
bool single_particle_forbidden(const ModePermutation& p, const OccupationList& r,
                               const OccupationList& s);

/// Bosonic law: suppressed iff prod_alpha Lambda_alpha(s) != 1.
bool boson_law_suppressed(std::span<const EigenPhase> column_phases,
                          const OccupationList& s);
bool boson_law_suppressed(const ModePermutation& p, const OccupationList& s);

/// Adapted fermionic law: suppressed iff prod_alpha Lambda_alpha(s) != (-1)^w,
/// where (-1)^w = induced_transposition_parity(r, p).
bool fermion_adapted_suppressed(std::span<const EigenPhase> column_phases,
                                const ModePermutation& p, const OccupationList& r,
                                const OccupationList& s);
bool fermion_adapted_suppressed(const ModePermutation& p, const OccupationList& r,
                                const OccupationList& s);

/// Extended fermionic law: suppressed iff Lambda(s) != Lambda_ini as exact
/// multisets. Strictly stronger than the adapted law.
bool fermion_extended_suppressed(std::span<const EigenPhase> column_phases,
                                 const ModePermutation& p, const OccupationList& r,
                                 const OccupationList& s);
bool fermion_extended_suppressed(const ModePermutation& p, const OccupationList& r,
                                 const OccupationList& s);

/// Pure-state law: suppressed iff prod_alpha Lambda_alpha(s) != e^{i phi},
/// phi the exact rational phase the state acquires under the permutation.
bool pure_state_law_suppressed(const EigenPhase& phi,
                               std::span<const EigenPhase> column_phases,
                               const OccupationList& s);
bool pure_state_law_suppressed(const EigenPhase& phi, const ModePermutation& p,
                               const OccupationList& s);

/// Suppression domains mirroring the standard event grouping. For bosons:
/// I  — single-particle forbidden only;
/// II — single-particle forbidden and boson-law flagged;
/// III — boson-law flagged only;
/// IV — no prediction.
/// For fermions:
/// I  — single-particle forbidden only (extended always fires here);
/// II — single-particle forbidden and adapted-law flagged;
/// III — adapted-law flagged (not single-particle forbidden);
/// IV — extended-law flagged only;
/// V  — no prediction.
/// Distinguishable particles: I when single-particle forbidden, else the
/// no-prediction domain (IV).
enum class Domain { kI, kII, kIII, kIV, kV };

const char* domain_label(Domain d);

/// The full set of law flags for one transition, plus the derived domain and
/// the applicable-law verdict for the statistics in use.
struct LawVerdict {
  OccupationList event;
  bool single_particle_forbidden = false;
  bool boson_suppressed = false;            // bosonic statistics only
  bool fermion_adapted_suppressed = false;  // fermionic statistics only
  bool fermion_extended_suppressed = false;
  std::optional<bool> pure_state_suppressed;  // set only by pure-state sweeps
  Domain domain = Domain::kIV;

  /// Whether the law applicable to the statistics in use predicts
  /// suppression: bosons — single-particle or boson law; fermions —
  /// single-particle or extended law; distinguishable — single-particle only.
  bool law_predicted = false;
};

LawVerdict classify_event(std::span<const EigenPhase> column_phases,
                          const ModePermutation& p, const OccupationList& r,
                          const OccupationList& s, Statistics stat);
LawVerdict classify_event(const ModePermutation& p, const OccupationList& r,
                          const OccupationList& s, Statistics stat);

}  // namespace mmi
