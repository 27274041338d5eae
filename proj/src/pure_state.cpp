#include "mmi/pure_state.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mmi/catalog.hpp"
#include "mmi/kernels.hpp"
#include "mmi/suppression.hpp"

namespace mmi {

namespace {

/// Determinant of the principal submatrix of g on the given index set.
Complex principal_minor(const ComplexMatrix& g, const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  ComplexMatrix sub(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) sub(a, b) = g(idx[static_cast<std::size_t>(a)],
                                              idx[static_cast<std::size_t>(b)]);
  return kernels::determinant(sub);
}

/// Sorts particles by (mode, label) in place and returns the reordering
/// sign: +1 for bosons, the transposition parity for fermions, and 0 when a
/// fermionic term repeats a (mode, label) pair.
int canonicalize_particles(std::vector<LabeledParticle>& ps, Statistics stat) {
  int swaps = 0;
  for (std::size_t i = 1; i < ps.size(); ++i) {
    LabeledParticle key = ps[i];
    std::size_t j = i;
    while (j > 0 && key < ps[j - 1]) {
      ps[j] = ps[j - 1];
      --j;
      ++swaps;
    }
    ps[j] = key;
  }
  if (stat == Statistics::kFermion) {
    for (std::size_t i = 1; i < ps.size(); ++i)
      if (ps[i] == ps[i - 1]) return 0;
    return (swaps % 2 == 0) ? 1 : -1;
  }
  return 1;
}

/// Term ordering: particle count, then mode sequence, then label sequence.
/// Keeps every group of equal-mode-sequence terms contiguous.
bool term_key_less(const std::vector<LabeledParticle>& a,
                   const std::vector<LabeledParticle>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].mode != b[i].mode) return a[i].mode < b[i].mode;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].label != b[i].label) return a[i].label < b[i].label;
  return false;
}

/// Three-way comparison of a term's mode sequence against a target mode
/// sequence, consistent with term_key_less.
int compare_mode_sequence(const std::vector<LabeledParticle>& ps,
                          const std::vector<int>& modes) {
  if (ps.size() != modes.size()) return ps.size() < modes.size() ? -1 : 1;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i].mode != modes[i]) return ps[i].mode < modes[i] ? -1 : 1;
  return 0;
}

/// <bra|ket> for two canonical particle vectors with identical mode
/// sequences: over each equal-mode block, the (anti)symmetrized sum of Gram
/// products over matchings of bra labels to ket labels.
Complex canonical_term_overlap(const std::vector<LabeledParticle>& bra,
                               const std::vector<LabeledParticle>& ket,
                               const InternalSpace& space, Statistics stat) {
  Complex result(1.0, 0.0);
  const std::size_t n = bra.size();
  std::size_t lo = 0;
  while (lo < n) {
    std::size_t hi = lo + 1;
    while (hi < n && bra[hi].mode == bra[lo].mode) ++hi;
    const std::size_t k = hi - lo;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    Complex block(0.0, 0.0);
    do {
      double sign = 1.0;
      if (stat == Statistics::kFermion) {
        int inv = 0;
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = a + 1; b < k; ++b)
            if (idx[a] > idx[b]) ++inv;
        sign = (inv % 2 == 0) ? 1.0 : -1.0;
      }
      Complex prod(sign, 0.0);
      for (std::size_t a = 0; a < k; ++a)
        prod *= space.overlap(bra[lo + a].label,
                              ket[lo + static_cast<std::size_t>(idx[a])].label);
      block += prod;
    } while (std::next_permutation(idx.begin(), idx.end()));
    result *= block;
    lo = hi;
  }
  return result;
}

/// <Psi|Psi> over a canonically sorted term list: equal-mode-sequence groups
/// are contiguous, and cross-group overlaps vanish.
double squared_norm(const std::vector<LabeledFockTerm>& terms, const InternalSpace& space,
                    Statistics stat) {
  double total = 0.0;
  std::size_t lo = 0;
  while (lo < terms.size()) {
    std::vector<int> modes;
    modes.reserve(terms[lo].particles.size());
    for (const auto& p : terms[lo].particles) modes.push_back(p.mode);
    std::size_t hi = lo + 1;
    while (hi < terms.size() && compare_mode_sequence(terms[hi].particles, modes) == 0)
      ++hi;
    for (std::size_t i = lo; i < hi; ++i) {
      total += std::norm(terms[i].coefficient) *
               canonical_term_overlap(terms[i].particles, terms[i].particles, space, stat)
                   .real();
      for (std::size_t j = i + 1; j < hi; ++j) {
        const Complex ov =
            canonical_term_overlap(terms[i].particles, terms[j].particles, space, stat);
        total += 2.0 * (std::conj(terms[i].coefficient) * terms[j].coefficient * ov).real();
      }
    }
    lo = hi;
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// InternalSpace
// ---------------------------------------------------------------------------

InternalSpace::InternalSpace(ComplexMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.square() || gram_.rows() < 1)
    throw std::invalid_argument("internal-space Gram matrix must be square and nonempty");
  const int d = gram_.rows();
  if (d > 12)
    throw std::invalid_argument("internal-space dimension capped at 12");
  for (int a = 0; a < d; ++a) {
    if (std::abs(gram_(a, a) - Complex(1.0, 0.0)) > 1e-9)
      throw std::invalid_argument("Gram matrix must have unit diagonal");
    for (int b = 0; b < d; ++b) {
      if (std::abs(gram_(a, b) - std::conj(gram_(b, a))) > 1e-9)
        throw std::invalid_argument("Gram matrix must be Hermitian");
      if (std::abs(gram_(a, b)) > 1.0 + 1e-9)
        throw std::invalid_argument("Gram entries are inner products of unit vectors; "
                                    "|<I_a|I_b>| <= 1 required");
    }
  }
  // Positive semidefiniteness: every principal minor of a Hermitian PSD
  // matrix is real and nonnegative. Dimensions are tiny, so check them all.
  std::vector<int> idx;
  for (int mask = 1; mask < (1 << d); ++mask) {
    idx.clear();
    for (int a = 0; a < d; ++a)
      if (mask & (1 << a)) idx.push_back(a);
    const Complex minor = principal_minor(gram_, idx);
    if (minor.real() < -1e-9 || std::abs(minor.imag()) > 1e-9)
      throw std::invalid_argument("Gram matrix must be positive semidefinite");
  }
}

InternalSpace InternalSpace::trivial() { return orthonormal(1); }

InternalSpace InternalSpace::orthonormal(int dim) {
  if (dim < 1) throw std::invalid_argument("internal-space dimension must be >= 1");
  return InternalSpace(ComplexMatrix::identity(dim));
}

Complex InternalSpace::overlap(int a, int b) const {
  if (a < 0 || a >= dim() || b < 0 || b >= dim())
    throw std::out_of_range("internal label out of range");
  return gram_(a, b);
}

// ---------------------------------------------------------------------------
// PureState
// ---------------------------------------------------------------------------

PureState::PureState(Statistics stat, InternalSpace internal,
                     std::vector<LabeledFockTerm> terms)
    : stat_(stat), internal_(std::move(internal)) {
  if (stat_ == Statistics::kDistinguishable)
    throw std::invalid_argument(
        "pure states use the bosonic or fermionic operator algebra; model "
        "distinguishable particles with orthogonal internal labels");
  std::vector<LabeledFockTerm> canon;
  canon.reserve(terms.size());
  for (auto& t : terms) {
    if (static_cast<int>(t.particles.size()) > kMaxPureStateParticles)
      throw std::invalid_argument("pure-state terms support at most " +
                                  std::to_string(kMaxPureStateParticles) + " particles");
    for (const auto& p : t.particles) {
      if (p.mode < 0) throw std::invalid_argument("particle modes must be >= 0");
      if (p.label < 0 || p.label >= internal_.dim())
        throw std::invalid_argument("particle label outside the internal space");
    }
    if (t.coefficient == Complex(0.0, 0.0)) continue;
    const int sign = canonicalize_particles(t.particles, stat_);
    if (sign == 0) continue;  // repeated fermionic operator
    canon.push_back({t.coefficient * static_cast<double>(sign), std::move(t.particles)});
  }
  std::sort(canon.begin(), canon.end(),
            [](const LabeledFockTerm& a, const LabeledFockTerm& b) {
              return term_key_less(a.particles, b.particles);
            });
  std::vector<LabeledFockTerm> merged;
  merged.reserve(canon.size());
  for (auto& t : canon) {
    if (!merged.empty() && merged.back().particles == t.particles)
      merged.back().coefficient += t.coefficient;
    else
      merged.push_back(std::move(t));
  }
  double peak = 0.0;
  for (const auto& t : merged) peak = std::max(peak, std::abs(t.coefficient));
  terms_.reserve(merged.size());
  for (auto& t : merged)
    if (std::abs(t.coefficient) > 1e-14 * peak) terms_.push_back(std::move(t));
  if (terms_.empty())
    throw std::invalid_argument("state vanishes (all terms cancel)");
  double n2 = squared_norm(terms_, internal_, stat_);
  if (n2 < 0.0) {
    if (n2 < -kStateTol) throw std::runtime_error("negative squared norm");
    n2 = 0.0;
  }
  norm_ = std::sqrt(n2);
  if (norm_ < 1e-12)
    throw std::invalid_argument("state vanishes (zero norm under the Gram metric)");
}

int PureState::particle_count() const {
  // Terms are sorted by particle count first, so the extremes suffice.
  const auto first = terms_.front().particles.size();
  const auto last = terms_.back().particles.size();
  if (first != last)
    throw std::logic_error("term list mixes particle numbers");
  return static_cast<int>(first);
}

PureState PureState::normalized() const {
  std::vector<LabeledFockTerm> scaled = terms_;
  for (auto& t : scaled) t.coefficient /= norm_;
  return PureState(stat_, internal_, std::move(scaled));
}

PureState PureState::with_internal(InternalSpace internal) const {
  return PureState(stat_, std::move(internal), terms_);
}

PureState PureState::apply_mode_permutation(const ModePermutation& p) const {
  std::vector<LabeledFockTerm> moved = terms_;
  for (auto& t : moved)
    for (auto& particle : t.particles) {
      if (particle.mode >= p.modes())
        throw std::invalid_argument("particle mode outside the permutation's range");
      particle.mode = p.apply(particle.mode);
    }
  return PureState(stat_, internal_, std::move(moved));
}

std::string PureState::str(const std::vector<std::string>& label_names) const {
  std::ostringstream out;
  auto label_text = [&](int label) -> std::string {
    if (label >= 0 && label < static_cast<int>(label_names.size()))
      return label_names[static_cast<std::size_t>(label)];
    return "L" + std::to_string(label);
  };
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << "\n";
    first = false;
    out << "(";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%+.6g%+.6gi", t.coefficient.real(),
                  t.coefficient.imag());
    out << buf << ")";
    if (t.particles.empty()) out << " |vac>";
    for (const auto& p : t.particles)
      out << " b+[" << (p.mode + 1) << "," << label_text(p.label) << "]";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

PureState build_fock_state(const OccupationList& r, Statistics stat) {
  if (stat == Statistics::kFermion && !r.single_occupancy())
    throw std::invalid_argument("fermionic Fock states require single occupancy");
  std::vector<LabeledParticle> ps;
  ps.reserve(static_cast<std::size_t>(r.total()));
  for (int j = 0; j < r.modes(); ++j)
    for (int c = 0; c < r[j]; ++c) ps.push_back({j, 0});
  PureState state(stat, InternalSpace::trivial(),
                  {{Complex(1.0, 0.0), std::move(ps)}});
  return state.normalized();
}

PureState build_superposition(const OccupationList& r, const ModePermutation& p, int k) {
  if (p.modes() != r.modes())
    throw std::invalid_argument("occupation list and permutation mode counts differ");
  // Period of r under p (divides the permutation order).
  int m = 0;
  OccupationList cur = r;
  do {
    cur = apply_to_occupation(p, cur);
    ++m;
  } while (!(cur == r) && m <= p.order());
  if (!(cur == r)) throw std::logic_error("occupation period exceeds permutation order");
  if (k < 0 || k >= m)
    throw std::invalid_argument("phase index k must lie in [0, period)");
  std::vector<LabeledFockTerm> terms;
  terms.reserve(static_cast<std::size_t>(m));
  cur = r;
  for (int l = 0; l < m; ++l) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(l) *
                         static_cast<double>(k) / static_cast<double>(m);
    std::vector<LabeledParticle> ps;
    ps.reserve(static_cast<std::size_t>(cur.total()));
    for (int j = 0; j < cur.modes(); ++j)
      for (int c = 0; c < cur[j]; ++c) ps.push_back({j, 0});
    terms.push_back({std::polar(1.0, angle), std::move(ps)});
    cur = apply_to_occupation(p, cur);
  }
  PureState state(Statistics::kBoson, InternalSpace::trivial(), std::move(terms));
  return state.normalized();
}

PureState build_entangled(const AssignmentList& d_r, const std::vector<int>& labels,
                          const InternalSpace& internal, const ModePermutation& p, int k,
                          Statistics stat) {
  const int particles = d_r.particles();
  if (static_cast<int>(labels.size()) != particles)
    throw std::invalid_argument("one internal label per particle required");
  for (int alpha = 0; alpha < particles; ++alpha)
    if (d_r[alpha] < 0 || d_r[alpha] >= p.modes())
      throw std::invalid_argument("assignment mode outside the permutation's range");
  if (p.order() > 1024)
    throw std::invalid_argument("permutation order too large for the cyclic construction");
  const int m = static_cast<int>(p.order());
  if (k < 0 || k >= m)
    throw std::invalid_argument("phase index k must lie in [0, order)");
  std::vector<int> pos(d_r.values());
  std::vector<LabeledFockTerm> terms;
  terms.reserve(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(l) *
                         static_cast<double>(k) / static_cast<double>(m);
    std::vector<LabeledParticle> ps;
    ps.reserve(static_cast<std::size_t>(particles));
    for (int alpha = 0; alpha < particles; ++alpha)
      ps.push_back({pos[static_cast<std::size_t>(alpha)],
                    labels[static_cast<std::size_t>(alpha)]});
    terms.push_back({std::polar(1.0, angle), std::move(ps)});
    for (auto& j : pos) j = p.apply(j);
  }
  PureState state(stat, internal, std::move(terms));
  return state.normalized();
}

PureState build_partially_distinguishable(const ModePermutation& p,
                                          const std::map<int, std::vector<int>>& labels_by_cycle,
                                          const InternalSpace& internal, Statistics stat) {
  std::vector<LabeledParticle> ps;
  for (const auto& [cycle_idx, labels] : labels_by_cycle) {
    if (cycle_idx < 0 || cycle_idx >= static_cast<int>(p.cycles().size()))
      throw std::invalid_argument("cycle index out of range");
    for (int mode : p.cycles()[static_cast<std::size_t>(cycle_idx)])
      for (int label : labels) ps.push_back({mode, label});
  }
  PureState state(stat, internal, {{Complex(1.0, 0.0), std::move(ps)}});
  return state.normalized();
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

Complex state_overlap(const PureState& a, const PureState& b) {
  if (a.statistics() != b.statistics())
    throw std::invalid_argument("state_overlap: statistics differ");
  if (a.internal().dim() != b.internal().dim())
    throw std::invalid_argument("state_overlap: internal dimensions differ");
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  // Both lists are sorted by mode sequence first, and cross-sequence term
  // overlaps vanish, so a two-pointer sweep over equal-mode-sequence groups
  // covers every nonzero pair.
  Complex total(0.0, 0.0);
  std::size_t ia = 0, ib = 0;
  while (ia < ta.size() && ib < tb.size()) {
    std::vector<int> modes;
    modes.reserve(ta[ia].particles.size());
    for (const auto& p : ta[ia].particles) modes.push_back(p.mode);
    const int cmp = -compare_mode_sequence(tb[ib].particles, modes);
    if (cmp < 0) {
      ++ia;
      continue;
    }
    if (cmp > 0) {
      ++ib;
      continue;
    }
    std::size_t ha = ia + 1;
    while (ha < ta.size() && compare_mode_sequence(ta[ha].particles, modes) == 0) ++ha;
    std::size_t hb = ib + 1;
    while (hb < tb.size() && compare_mode_sequence(tb[hb].particles, modes) == 0) ++hb;
    for (std::size_t i = ia; i < ha; ++i)
      for (std::size_t j = ib; j < hb; ++j)
        total += std::conj(ta[i].coefficient) * tb[j].coefficient *
                 canonical_term_overlap(ta[i].particles, tb[j].particles, a.internal(),
                                        a.statistics());
    ia = ha;
    ib = hb;
  }
  return total;
}

std::optional<EigenPhase> detect_permutation_phase(const PureState& state,
                                                   const ModePermutation& p) {
  const PureState moved = state.apply_mode_permutation(p);
  const auto& a = state.terms();
  const auto& b = moved.terms();
  if (a.size() != b.size()) return std::nullopt;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].particles == b[i].particles)) return std::nullopt;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (std::abs(a[i].coefficient) > std::abs(a[peak].coefficient)) peak = i;
  const double scale = std::abs(a[peak].coefficient);
  const Complex ratio = b[peak].coefficient / a[peak].coefficient;
  if (std::abs(std::abs(ratio) - 1.0) > kStateTol) return std::nullopt;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(b[i].coefficient - ratio * a[i].coefficient) > kStateTol * scale)
      return std::nullopt;
  double turns = std::arg(ratio) / (2.0 * std::numbers::pi);
  turns -= std::floor(turns);
  return round_phase_to_rational(turns, p.order(), 1e-6);
}

PureState evolve(const PureState& state, const UnitaryMatrix& u) {
  const int n = u.dim();
  std::vector<LabeledFockTerm> raw;
  for (const auto& t : state.terms()) {
    for (const auto& particle : t.particles)
      if (particle.mode >= n)
        throw std::invalid_argument("particle mode outside the unitary's range");
    const std::size_t count = t.particles.size();
    std::vector<LabeledParticle> current(count);
    // Depth-first expansion of prod_alpha (sum_k U_{j_alpha,k} b+_{k,I_alpha}).
    auto expand = [&](auto&& self, std::size_t depth, Complex coeff) -> void {
      if (depth == count) {
        raw.push_back({coeff, current});
        return;
      }
      const int j = t.particles[depth].mode;
      const int label = t.particles[depth].label;
      for (int k = 0; k < n; ++k) {
        const Complex amp = u(j, k);
        if (amp == Complex(0.0, 0.0)) continue;
        current[depth] = {k, label};
        self(self, depth + 1, coeff * amp);
      }
    };
    expand(expand, 0, t.coefficient);
  }
  return PureState(state.statistics(), state.internal(), std::move(raw));
}

double mode_occupation_probability(const PureState& state_evo, const OccupationList& s) {
  const std::vector<int> target = occupation_to_assignment(s).values();
  const auto& terms = state_evo.terms();
  auto first = std::lower_bound(
      terms.begin(), terms.end(), target,
      [](const LabeledFockTerm& t, const std::vector<int>& m) {
        return compare_mode_sequence(t.particles, m) < 0;
      });
  auto last = std::upper_bound(
      terms.begin(), terms.end(), target,
      [](const std::vector<int>& m, const LabeledFockTerm& t) {
        return compare_mode_sequence(t.particles, m) > 0;
      });
  double total = 0.0;
  for (auto i = first; i != last; ++i) {
    total += std::norm(i->coefficient) *
             canonical_term_overlap(i->particles, i->particles, state_evo.internal(),
                                    state_evo.statistics())
                 .real();
    for (auto j = std::next(i); j != last; ++j) {
      const Complex ov = canonical_term_overlap(i->particles, j->particles,
                                                state_evo.internal(),
                                                state_evo.statistics());
      total += 2.0 * (std::conj(i->coefficient) * j->coefficient * ov).real();
    }
  }
  total /= state_evo.norm() * state_evo.norm();
  if (total < 0.0) {
    if (total < -kSumTol) throw std::runtime_error("negative occupation probability");
    total = 0.0;
  }
  return total;
}

PureStateSuppressionReport verify_pure_state_suppression(
    const PureState& state, const ModePermutation& p, const EigenbasisRealization& a,
    const PhaseVector& sigma, const std::vector<OccupationList>& outputs) {
  if (a.basis.dim() != p.modes())
    throw std::invalid_argument("eigenbasis dimension does not match the permutation");
  const auto phi = detect_permutation_phase(state, p);
  if (!phi)
    throw std::invalid_argument(
        "state is not a permutation eigenstate; no phase to test against");
  const UnitaryMatrix u = compose(PhaseVector::zeros(p.modes()), a, sigma);
  const PureState evolved = evolve(state.normalized(), u);
  PureStateSuppressionReport report;
  report.phi = *phi;
  for (const auto& s : outputs) {
    const double prob = mode_occupation_probability(evolved, s);
    const bool flagged = pure_state_law_suppressed(*phi, a.column_phases, s);
    ++report.outputs_checked;
    report.total_probability += prob;
    if (flagged) {
      ++report.law_flagged;
      report.max_flagged_probability = std::max(report.max_flagged_probability, prob);
      if (prob > kSoundnessTol) report.violations.emplace_back(s, prob);
    }
  }
  return report;
}

PureStateSuppressionReport verify_pure_state_suppression(const PureState& state,
                                                         const ModePermutation& p,
                                                         const EigenbasisRealization& a,
                                                         const PhaseVector& sigma) {
  const int n = p.modes();
  const int particles = state.particle_count();
  std::vector<OccupationList> outputs;
  if (state.statistics() == Statistics::kFermion) {
    FermionicOutputs gen(n, particles);
    while (auto s = gen.next()) outputs.push_back(*s);
  } else {
    BosonicOutputs gen(n, particles);
    while (auto s = gen.next()) outputs.push_back(*s);
  }
  return verify_pure_state_suppression(state, p, a, sigma, outputs);
}

}  // namespace mmi
