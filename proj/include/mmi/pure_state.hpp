#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmi/eigenbasis.hpp"
#include "mmi/matrix.hpp"
#include "mmi/occupations.hpp"
#include "mmi/permutation.hpp"
#include "mmi/phase.hpp"
#include "mmi/statistics.hpp"
#include "mmi/tolerances.hpp"

namespace mmi {

/// Internal (non-mode) single-particle states, represented purely by their
/// pairwise inner products: labels are indices 0..dim-1 and gram(a, b) =
/// <I_a|I_b>. The matrix must be Hermitian, positive semidefinite, with unit
/// diagonal and |entries| <= 1.
class InternalSpace {
 public:
  explicit InternalSpace(ComplexMatrix gram);

  /// One label; every particle indistinguishable internally.
  static InternalSpace trivial();

  /// dim mutually orthogonal labels (identity Gram).
  static InternalSpace orthonormal(int dim);

  int dim() const { return gram_.rows(); }
  const ComplexMatrix& gram() const { return gram_; }
  Complex overlap(int a, int b) const;

 private:
  ComplexMatrix gram_;
};

/// One particle of a term: which mode it occupies and which internal label
/// it carries. Modes are 0-based internally.
struct LabeledParticle {
  int mode;
  int label;
  auto operator<=>(const LabeledParticle&) const = default;
};

/// One product of creation operators with a coefficient. Canonical form is
/// sorted by (mode, label); for fermions the sort sign is folded into the
/// coefficient and terms with a repeated (mode, label) pair vanish.
struct LabeledFockTerm {
  Complex coefficient;
  std::vector<LabeledParticle> particles;
};

/// Exact pure-state arithmetic is exponential in the particle number; this
/// cap keeps every operation comfortably interactive.
inline constexpr int kMaxPureStateParticles = 5;

/// A pure many-particle state with internal degrees of freedom, stored as a
/// canonicalized term list over labeled creation operators. Immutable after
/// construction. Statistics must be bosonic or fermionic (distinguishability
/// is expressed through orthogonal internal labels, not a third algebra).
class PureState {
 public:
  PureState(Statistics stat, InternalSpace internal, std::vector<LabeledFockTerm> terms);

  Statistics statistics() const { return stat_; }
  const InternalSpace& internal() const { return internal_; }

  /// Canonical term list: particles sorted within terms, terms sorted by
  /// (mode sequence, label sequence), duplicates merged.
  const std::vector<LabeledFockTerm>& terms() const { return terms_; }

  /// Norm of the stored coefficients under the Gram metric (1 for states
  /// from the builders; evolve preserves it).
  double norm() const { return norm_; }

  /// The common particle count of all terms; throws if the term list mixes
  /// particle numbers.
  int particle_count() const;

  /// Same rays, coefficients scaled to norm 1.
  PureState normalized() const;

  /// Same term list against a different internal space (the Gram matrix
  /// affects norms and probabilities, never the term structure).
  PureState with_internal(InternalSpace internal) const;

  /// Particles hop j -> pi(j) while labels ride along; re-canonicalized.
  PureState apply_mode_permutation(const ModePermutation& p) const;

  /// Human-readable term listing; label_names (optional) replace the default
  /// L0, L1, ... in the rendering.
  std::string str(const std::vector<std::string>& label_names = {}) const;

 private:
  Statistics stat_;
  InternalSpace internal_;
  std::vector<LabeledFockTerm> terms_;
  double norm_ = 0.0;
};

// ---------------------------------------------------------------------------
// Builders (all return normalized states).
// ---------------------------------------------------------------------------

/// The Fock product state of occupation r with a trivial internal space.
PureState build_fock_state(const OccupationList& r, Statistics stat);

/// The cyclic superposition sum_{l=0..m-1} e^{i 2 pi l k/m} |r under p^l> /
/// sqrt(m), with m the period of r under p. Acquires phase e^{-i 2 pi k/m}
/// under the permutation. Bosonic.
PureState build_superposition(const OccupationList& r, const ModePermutation& p, int k);

/// The entangled counterpart: particle alpha carries internal label
/// labels[alpha] while the mode pattern cycles, m = order(p):
/// sum_{l=0..m-1} e^{i 2 pi l k/m} prod_alpha a^dag_{p^l(d_alpha), labels[alpha]}.
PureState build_entangled(const AssignmentList& d_r, const std::vector<int>& labels,
                          const InternalSpace& internal, const ModePermutation& p, int k,
                          Statistics stat = Statistics::kBoson);

/// The permutation-symmetric product state in which every mode of an
/// occupied cycle hosts the same label set: for each (cycle index -> labels)
/// entry, each mode of that cycle gets one particle per listed label.
PureState build_partially_distinguishable(const ModePermutation& p,
                                          const std::map<int, std::vector<int>>& labels_by_cycle,
                                          const InternalSpace& internal, Statistics stat);

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

/// <a|b> under a's Gram metric. Both states must share statistics and
/// internal dimension; the label overlaps come from a's internal space.
Complex state_overlap(const PureState& a, const PureState& b);

/// The exact rational phase phi with permuted(state) = e^{i phi} state, if
/// one exists: coefficients must match within kStateTol after the mode
/// permutation, and phi must round to a denominator <= order(p).
std::optional<EigenPhase> detect_permutation_phase(const PureState& state,
                                                   const ModePermutation& p);

/// Evolves every creation operator through U: a^dag_{j,I} -> sum_k U_{j,k}
/// b^dag_{k,I}. Preserves the norm within kStateTol.
PureState evolve(const PureState& state, const UnitaryMatrix& u);

/// Probability that the evolved state's mode occupations equal s,
/// marginalized over internal outcomes: grouped coefficient pairs weighted
/// by Gram overlaps summed over within-mode permutations. Exact at desk
/// scale; independent of the permanent/determinant kernels.
double mode_occupation_probability(const PureState& state_evo, const OccupationList& s);

/// Outcome of one pure-state suppression sweep.
struct PureStateSuppressionReport {
  EigenPhase phi;
  int outputs_checked = 0;
  int law_flagged = 0;
  double max_flagged_probability = 0.0;
  double total_probability = 0.0;
  /// Law-flagged outputs with probability above kSoundnessTol (expected none).
  std::vector<std::pair<OccupationList, double>> violations;
};

/// Runs the pure-state law over the given outputs: evolves the state through
/// U = A Sigma (no input-side local phases) and checks every law-flagged
/// output for numerically zero probability. Throws if the state has no
/// detectable permutation phase.
PureStateSuppressionReport verify_pure_state_suppression(
    const PureState& state, const ModePermutation& p, const EigenbasisRealization& a,
    const PhaseVector& sigma, const std::vector<OccupationList>& outputs);

/// Same, over every output event of the state's particle number (bosonic
/// enumeration for bosons, single-occupancy for fermions).
PureStateSuppressionReport verify_pure_state_suppression(const PureState& state,
                                                         const ModePermutation& p,
                                                         const EigenbasisRealization& a,
                                                         const PhaseVector& sigma);

}  // namespace mmi
