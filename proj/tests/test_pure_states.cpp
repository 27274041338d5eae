#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <vector>

#include "mmi/catalog.hpp"
#include "mmi/eigenbasis.hpp"
#include "mmi/probabilities.hpp"
#include "mmi/pure_state.hpp"
#include "mmi/suppression.hpp"
#include "oracles.hpp"

using mmi::AssignmentList;
using mmi::Complex;
using mmi::ComplexMatrix;
using mmi::EigenPhase;
using mmi::InternalSpace;
using mmi::LabeledFockTerm;
using mmi::LabeledParticle;
using mmi::ModePermutation;
using mmi::OccupationList;
using mmi::PureState;
using mmi::Statistics;
using mmi::UnitaryMatrix;

namespace {

InternalSpace two_label_gram(Complex g) {
  ComplexMatrix m(2, 2);
  m(0, 0) = m(1, 1) = {1.0, 0.0};
  m(0, 1) = g;
  m(1, 0) = std::conj(g);
  return InternalSpace(std::move(m));
}

std::vector<OccupationList> all_bosonic(int n, int total) {
  std::vector<OccupationList> out;
  mmi::BosonicOutputs stream(n, total);
  while (auto s = stream.next()) out.push_back(*s);
  return out;
}

std::vector<OccupationList> all_fermionic(int n, int total) {
  std::vector<OccupationList> out;
  mmi::FermionicOutputs stream(n, total);
  while (auto s = stream.next()) out.push_back(*s);
  return out;
}

}  // namespace

TEST_CASE("internal spaces validate their Gram matrices") {
  CHECK(InternalSpace::trivial().dim() == 1);
  const InternalSpace ortho = InternalSpace::orthonormal(3);
  CHECK(ortho.dim() == 3);
  CHECK(ortho.overlap(0, 0) == Complex(1.0, 0.0));
  CHECK(ortho.overlap(0, 2) == Complex(0.0, 0.0));
  const InternalSpace partial = two_label_gram({0.3, 0.4});
  CHECK(partial.overlap(0, 1) == Complex(0.3, 0.4));
  CHECK(partial.overlap(1, 0) == Complex(0.3, -0.4));

  ComplexMatrix rect(2, 3);
  CHECK_THROWS(InternalSpace{std::move(rect)});
  ComplexMatrix bad_diag = ComplexMatrix::identity(2);
  bad_diag(1, 1) = {0.5, 0.0};
  CHECK_THROWS(InternalSpace{std::move(bad_diag)});
  ComplexMatrix non_herm = ComplexMatrix::identity(2);
  non_herm(0, 1) = {0.5, 0.0};
  non_herm(1, 0) = {0.2, 0.0};
  CHECK_THROWS(InternalSpace{std::move(non_herm)});
  ComplexMatrix too_big = ComplexMatrix::identity(2);
  too_big(0, 1) = too_big(1, 0) = {1.5, 0.0};
  CHECK_THROWS(InternalSpace{std::move(too_big)});
  // Entrywise legal but not positive semidefinite.
  ComplexMatrix npsd = ComplexMatrix::identity(3);
  npsd(0, 1) = npsd(1, 0) = {0.9, 0.0};
  npsd(1, 2) = npsd(2, 1) = {0.9, 0.0};
  npsd(0, 2) = npsd(2, 0) = {-0.9, 0.0};
  CHECK_THROWS(InternalSpace{std::move(npsd)});
  CHECK_THROWS(InternalSpace::orthonormal(13));  // dimension cap
}

TEST_CASE("term lists canonicalize by statistics") {
  const InternalSpace ortho = InternalSpace::orthonormal(2);
  // Bosons: out-of-order particles sort without a sign.
  const PureState b(Statistics::kBoson, ortho,
                    {{Complex(0.5, 0.0), {{2, 1}, {0, 0}}}});
  REQUIRE(b.terms().size() == 1);
  CHECK(b.terms()[0].particles == std::vector<LabeledParticle>{{0, 0}, {2, 1}});
  CHECK(b.terms()[0].coefficient == Complex(0.5, 0.0));
  // Fermions: one transposition flips the sign.
  const PureState f(Statistics::kFermion, ortho,
                    {{Complex(1.0, 0.0), {{2, 1}, {0, 0}}}});
  CHECK(f.terms()[0].coefficient == Complex(-1.0, 0.0));
  // A repeated fermionic operator annihilates the term.
  CHECK_THROWS(PureState(Statistics::kFermion, ortho,
                         {{Complex(1.0, 0.0), {{1, 0}, {1, 0}}}}));
  // ... but bosons may stack.
  CHECK_NOTHROW(PureState(Statistics::kBoson, ortho,
                          {{Complex(1.0, 0.0), {{1, 0}, {1, 0}}}}));
  // Equal terms merge; opposite terms cancel to nothing.
  const PureState merged(Statistics::kBoson, ortho,
                         {{Complex(1.0, 0.0), {{0, 0}}}, {Complex(2.0, 0.0), {{0, 0}}}});
  REQUIRE(merged.terms().size() == 1);
  CHECK(merged.terms()[0].coefficient == Complex(3.0, 0.0));
  CHECK_THROWS(PureState(Statistics::kBoson, ortho,
                         {{Complex(1.0, 0.0), {{0, 0}}}, {Complex(-1.0, 0.0), {{0, 0}}}}));
  // The operator algebra is bosonic or fermionic only.
  CHECK_THROWS(PureState(Statistics::kDistinguishable, ortho, {{Complex(1.0, 0.0), {{0, 0}}}}));
  // Label outside the internal space.
  CHECK_THROWS(PureState(Statistics::kBoson, ortho, {{Complex(1.0, 0.0), {{0, 2}}}}));
  // More particles than the exact-arithmetic cap.
  CHECK_THROWS(PureState(
      Statistics::kBoson, ortho,
      {{Complex(1.0, 0.0), {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}}}}));
}

TEST_CASE("builders produce normalized states with the advertised phases") {
  // Fock product state.
  const PureState fock = mmi::build_fock_state(OccupationList::parse("1,1,0"), Statistics::kBoson);
  CHECK(fock.norm() == doctest::Approx(1.0));
  CHECK(fock.particle_count() == 2);
  REQUIRE(fock.terms().size() == 1);
  CHECK(fock.terms()[0].particles == std::vector<LabeledParticle>{{0, 0}, {1, 0}});

  // Cyclic superposition over the orbit of (1,0) under the swap.
  const ModePermutation swap2 = ModePermutation::parse("(1 2)", 2);
  for (int k = 0; k < 2; ++k) {
    const PureState sup = mmi::build_superposition(OccupationList::parse("1,0"), swap2, k);
    CHECK(sup.norm() == doctest::Approx(1.0));
    CHECK(sup.terms().size() == 2);
    const auto phi = mmi::detect_permutation_phase(sup, swap2);
    REQUIRE(phi.has_value());
    CHECK(*phi == EigenPhase(-k, 2));
  }
  // On a 4-cycle, k runs over all quarter turns.
  const ModePermutation cyc4 = mmi::fourier_cyclic_shift(4, 1);
  for (int k = 0; k < 4; ++k) {
    const PureState sup =
        mmi::build_superposition(OccupationList::parse("1,0,0,0"), cyc4, k);
    const auto phi = mmi::detect_permutation_phase(sup, cyc4);
    REQUIRE(phi.has_value());
    CHECK(*phi == EigenPhase(-k, 4));
  }

  // An invariant Fock state carries phase 0 (bosons) and the induced
  // rearrangement sign (fermions).
  const ModePermutation p6 = ModePermutation::parse("(1 2 3)(4 5 6)", 6);
  const PureState inv =
      mmi::build_fock_state(OccupationList::parse("1,1,1,0,0,0"), Statistics::kBoson);
  CHECK(*mmi::detect_permutation_phase(inv, p6) == EigenPhase(0, 1));
  const PureState invf =
      mmi::build_fock_state(OccupationList::parse("1,1,1,0,0,0"), Statistics::kFermion);
  // A 3-cycle is even, so the fermionic state is strictly invariant.
  CHECK(*mmi::detect_permutation_phase(invf, p6) == EigenPhase(0, 1));
  const PureState invf2 =
      mmi::build_fock_state(OccupationList::parse("1,1"), Statistics::kFermion);
  // A transposition is odd: the state flips sign, a half-turn phase.
  CHECK(*mmi::detect_permutation_phase(invf2, swap2) == EigenPhase(1, 2));
  // A non-invariant state has no permutation phase at all.
  const PureState off = mmi::build_fock_state(OccupationList::parse("1,0"), Statistics::kBoson);
  CHECK(!mmi::detect_permutation_phase(off, swap2).has_value());

  // Entangled pair: mode pattern cycles while labels stay put.
  const InternalSpace ortho = InternalSpace::orthonormal(2);
  const PureState bell_plus =
      mmi::build_entangled(AssignmentList::parse("(1,2)"), {0, 1}, ortho, swap2, 0);
  CHECK(bell_plus.norm() == doctest::Approx(1.0));
  CHECK(bell_plus.terms().size() == 2);
  CHECK(*mmi::detect_permutation_phase(bell_plus, swap2) == EigenPhase(0, 1));
  const PureState bell_minus =
      mmi::build_entangled(AssignmentList::parse("(1,2)"), {0, 1}, ortho, swap2, 1);
  CHECK(*mmi::detect_permutation_phase(bell_minus, swap2) == EigenPhase(1, 2));

  // Partially distinguishable cycle filling: one label per cycle.
  const ModePermutation p22 = ModePermutation::parse("(1 2)(3 4)", 4);
  const PureState pd = mmi::build_partially_distinguishable(
      p22, {{0, {0}}, {1, {1}}}, two_label_gram({0.5, 0.0}), Statistics::kBoson);
  CHECK(pd.norm() == doctest::Approx(1.0));
  CHECK(pd.particle_count() == 4);
  CHECK(*mmi::detect_permutation_phase(pd, p22) == EigenPhase(0, 1));
  CHECK_THROWS(mmi::build_partially_distinguishable(p22, {{2, {0}}}, two_label_gram({0.5, 0.0}),
                                                    Statistics::kBoson));
}

TEST_CASE("state overlaps follow the Gram metric") {
  for (const double g : {0.0, 0.3, 0.9}) {
    const InternalSpace space = two_label_gram({g, 0.0});
    const ModePermutation swap2 = ModePermutation::parse("(1 2)", 2);
    const PureState plus =
        mmi::build_entangled(AssignmentList::parse("(1,2)"), {0, 1}, space, swap2, 0);
    const PureState minus =
        mmi::build_entangled(AssignmentList::parse("(1,2)"), {0, 1}, space, swap2, 1);
    CHECK(std::abs(mmi::state_overlap(plus, plus) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(mmi::state_overlap(minus, minus) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(mmi::state_overlap(plus, minus)) < 1e-12);
  }
  // Single-particle states with overlapping labels.
  const InternalSpace space = two_label_gram({0.25, 0.0});
  const PureState a(Statistics::kBoson, space, {{Complex(1.0, 0.0), {{0, 0}}}});
  const PureState b(Statistics::kBoson, space, {{Complex(1.0, 0.0), {{0, 1}}}});
  CHECK(std::abs(mmi::state_overlap(a, b) - Complex(0.25, 0.0)) < 1e-12);
  const PureState c(Statistics::kBoson, space, {{Complex(1.0, 0.0), {{1, 0}}}});
  CHECK(std::abs(mmi::state_overlap(a, c)) == 0.0);  // different modes
  const PureState f(Statistics::kFermion, space, {{Complex(1.0, 0.0), {{0, 0}}}});
  CHECK_THROWS(mmi::state_overlap(a, f));  // mixed statistics
  const PureState d(Statistics::kBoson, InternalSpace::trivial(),
                    {{Complex(1.0, 0.0), {{0, 0}}}});
  CHECK_THROWS(mmi::state_overlap(a, d));  // internal dimensions differ
}

TEST_CASE("evolution preserves norms and matches the closed-form limits") {
  mmi::Rng rng(808);
  const UnitaryMatrix u = mmi::haar_unitary(4, rng);

  // Indistinguishable limit: a single internal label reproduces the bosonic
  // and fermionic transition probabilities.
  for (const Statistics stat : {Statistics::kBoson, Statistics::kFermion}) {
    const OccupationList r = stat == Statistics::kFermion
                                 ? OccupationList::parse("1,1,0,1")
                                 : OccupationList::parse("2,1,0,0");
    const PureState evo = mmi::evolve(mmi::build_fock_state(r, stat), u);
    CHECK(evo.norm() == doctest::Approx(1.0).epsilon(1e-10));
    const auto outputs = stat == Statistics::kFermion ? all_fermionic(4, 3) : all_bosonic(4, 3);
    double sum = 0.0;
    for (const auto& s : outputs) {
      const double pure = mmi::mode_occupation_probability(evo, s);
      const double closed = mmi::transition_probability(u, r, s, stat);
      CHECK(std::abs(pure - closed) < 1e-10);
      sum += pure;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  // Distinguishable limit: orthonormal labels, one per particle.
  {
    const OccupationList r = OccupationList::parse("1,1,1,0");
    const InternalSpace ortho = InternalSpace::orthonormal(3);
    const PureState in(Statistics::kBoson, ortho,
                       {{Complex(1.0, 0.0), {{0, 0}, {1, 1}, {2, 2}}}});
    const PureState evo = mmi::evolve(in, u);
    for (const auto& s : all_bosonic(4, 3)) {
      const double pure = mmi::mode_occupation_probability(evo, s);
      const double closed =
          mmi::transition_probability(u, r, s, Statistics::kDistinguishable);
      CHECK(std::abs(pure - closed) < 1e-10);
    }
  }

  // A maximally overlapping two-label Gram behaves like one label.
  {
    const OccupationList r = OccupationList::parse("1,1,0,0");
    const PureState in(Statistics::kBoson, two_label_gram({1.0, 0.0}),
                       {{Complex(1.0, 0.0), {{0, 0}, {1, 1}}}});
    const PureState evo = mmi::evolve(in.normalized(), u);
    for (const auto& s : all_bosonic(4, 2)) {
      const double pure = mmi::mode_occupation_probability(evo, s);
      const double closed = mmi::transition_probability(u, r, s, Statistics::kBoson);
      CHECK(std::abs(pure - closed) < 1e-10);
    }
  }

  // Partial distinguishability interpolates: normalization still holds.
  {
    const PureState in(Statistics::kBoson, two_label_gram({0.5, 0.2}),
                       {{Complex(1.0, 0.0), {{0, 0}, {1, 1}}}});
    const PureState evo = mmi::evolve(in.normalized(), u);
    CHECK(evo.norm() == doctest::Approx(1.0).epsilon(1e-10));
    double sum = 0.0;
    for (const auto& s : all_bosonic(4, 2))
      sum += mmi::mode_occupation_probability(evo, s);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  // Evolving through the identity is the identity.
  const PureState bell = mmi::build_entangled(AssignmentList::parse("(1,2)"), {0, 1},
                                              InternalSpace::orthonormal(2),
                                              ModePermutation::parse("(1 2)", 2), 1);
  const PureState same =
      mmi::evolve(bell, UnitaryMatrix(ComplexMatrix::identity(2)));
  CHECK(std::abs(mmi::state_overlap(bell, same) - Complex(1.0, 0.0)) < 1e-12);

  // An output with the wrong particle number has probability zero.
  CHECK(mmi::mode_occupation_probability(bell, OccupationList::parse("1,0")) == 0.0);
}

TEST_CASE("entangled pairs through a balanced coupler bunch or antibunch") {
  const ModePermutation swap2 = ModePermutation::parse("(1 2)", 2);
  const UnitaryMatrix us = mmi::sylvester_unitary(1);
  for (const double g : {0.0, 0.3, 0.9}) {
    const InternalSpace space = two_label_gram({g, 0.0});
    // Symmetric pair: coincidences vanish, like bosons.
    const PureState plus =
        mmi::build_entangled(AssignmentList::parse("(1,2)"), {0, 1}, space, swap2, 0);
    const PureState plus_evo = mmi::evolve(plus, us);
    CHECK(mmi::mode_occupation_probability(plus_evo, OccupationList::parse("1,1")) <
          1e-12);
    // Antisymmetric pair: bunching vanishes, like fermions.
    const PureState minus =
        mmi::build_entangled(AssignmentList::parse("(1,2)"), {0, 1}, space, swap2, 1);
    const PureState minus_evo = mmi::evolve(minus, us);
    CHECK(mmi::mode_occupation_probability(minus_evo, OccupationList::parse("2,0")) <
          1e-12);
    CHECK(mmi::mode_occupation_probability(minus_evo, OccupationList::parse("0,2")) <
          1e-12);
    CHECK(mmi::mode_occupation_probability(minus_evo, OccupationList::parse("1,1")) ==
          doctest::Approx(1.0));

    // The evolved states coincide with their closed-form targets.
    const PureState target_plus(
        Statistics::kBoson, space,
        {{Complex(1.0, 0.0), {{0, 0}, {0, 1}}}, {Complex(-1.0, 0.0), {{1, 0}, {1, 1}}}});
    CHECK(std::abs(mmi::state_overlap(target_plus.normalized(), plus_evo)) >
          1.0 - 1e-10);
    const PureState target_minus(
        Statistics::kBoson, space,
        {{Complex(1.0, 0.0), {{0, 1}, {1, 0}}}, {Complex(-1.0, 0.0), {{0, 0}, {1, 1}}}});
    CHECK(std::abs(mmi::state_overlap(target_minus.normalized(), minus_evo)) >
          1.0 - 1e-10);
  }
}

TEST_CASE("suppression sweeps for phased superpositions route and flag correctly") {
  // Single particle on a 4-cycle: the law allows exactly one output mode,
  // and the full probability lands there.
  const int m = 4;
  const ModePermutation cyc = mmi::fourier_cyclic_shift(m, 1);
  const auto canonical = mmi::canonical_eigenbasis(cyc);
  for (int k = 0; k < m; ++k) {
    const PureState state =
        mmi::build_superposition(OccupationList::parse("1,0,0,0"), cyc, k);
    const auto report = mmi::verify_pure_state_suppression(
        state, cyc, canonical, mmi::PhaseVector::zeros(m));
    CHECK(report.phi == EigenPhase(-k, m));
    CHECK(report.outputs_checked == m);
    CHECK(report.law_flagged == m - 1);
    CHECK(report.violations.empty());
    CHECK(report.max_flagged_probability < 1e-12);
    CHECK(report.total_probability == doctest::Approx(1.0).epsilon(1e-9));
    // The one allowed mode is 1 + (m - k) mod m, and it takes everything.
    const PureState evo = mmi::evolve(state, canonical.basis);
    const int target = 1 + (m - k) % m;
    OccupationList s = mmi::assignment_to_occupation(
        AssignmentList::parse("(" + std::to_string(target) + ")"), m);
    CHECK(mmi::mode_occupation_probability(evo, s) == doctest::Approx(1.0).epsilon(1e-9));
  }
  // Randomized realizations and output-side phases do not disturb the law.
  for (int k = 0; k < m; ++k) {
    const PureState state =
        mmi::build_superposition(OccupationList::parse("1,0,0,0"), cyc, k);
    const auto a = mmi::randomized_eigenbasis(cyc, 17);
    mmi::Rng prng(55);
    mmi::PhaseVector sigma = mmi::PhaseVector::zeros(m);
    for (auto& x : sigma.radians) x = 6.28 * prng.uniform();
    const auto report = mmi::verify_pure_state_suppression(state, cyc, a, sigma);
    CHECK(report.violations.empty());
    CHECK(report.law_flagged == m - 1);
  }
  // A state without a permutation phase is rejected.
  const PureState off = mmi::build_fock_state(OccupationList::parse("1,0,0,0"),
                                              Statistics::kBoson);
  CHECK_THROWS_AS(mmi::verify_pure_state_suppression(off, cyc, canonical,
                                                     mmi::PhaseVector::zeros(m)),
                  std::invalid_argument);
}

TEST_CASE("suppressed outputs of a symmetric product state ignore the labels") {
  // One label per cycle of (1 2)(3 4): the suppressed set is the same for
  // every cross-label Gram, and law-flagged outputs lie inside it.
  const ModePermutation p = ModePermutation::parse("(1 2)(3 4)", 4);
  const auto a = mmi::randomized_eigenbasis(p, 23);
  const std::vector<Complex> grams = {
      {0.0, 0.0}, {0.5, 0.0}, {0.9 * std::cos(0.785398), 0.9 * std::sin(0.785398)}};
  std::vector<std::set<std::string>> zero_sets;
  for (const Complex& g : grams) {
    const PureState state = mmi::build_partially_distinguishable(
        p, {{0, {0}}, {1, {1}}}, two_label_gram(g), Statistics::kBoson);
    const auto report =
        mmi::verify_pure_state_suppression(state, p, a, mmi::PhaseVector::zeros(4));
    CHECK(report.violations.empty());
    const PureState evo = mmi::evolve(mmi::evolve(state, a.basis),
                                      UnitaryMatrix(ComplexMatrix::identity(4)));
    std::set<std::string> zeros;
    for (const auto& s : all_bosonic(4, 4))
      if (mmi::mode_occupation_probability(evo, s) <= 1e-10) zeros.insert(s.str());
    // Law-flagged outputs are a subset of the numerically suppressed set.
    const auto phi = mmi::detect_permutation_phase(state, p);
    REQUIRE(phi.has_value());
    for (const auto& s : all_bosonic(4, 4))
      if (mmi::pure_state_law_suppressed(*phi, a.column_phases, s))
        CHECK(zeros.count(s.str()) == 1);
    zero_sets.push_back(std::move(zeros));
  }
  CHECK(zero_sets[0] == zero_sets[1]);
  CHECK(zero_sets[1] == zero_sets[2]);
}

TEST_CASE("rendering names terms and labels") {
  const PureState bell = mmi::build_entangled(AssignmentList::parse("(1,2)"), {0, 1},
                                              InternalSpace::orthonormal(2),
                                              ModePermutation::parse("(1 2)", 2), 1);
  const std::string plain = bell.str();
  CHECK(plain.find("L0") != std::string::npos);
  const std::string named = bell.str({"up", "down"});
  CHECK(named.find("up") != std::string::npos);
  CHECK(named.find("down") != std::string::npos);
}
