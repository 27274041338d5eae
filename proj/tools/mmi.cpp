// mmi — permutation-symmetric multimode interference workbench.
//
// Subcommands:
//   table          emit an output-probability table (CSV or JSON)
//   check          law-soundness sweep: flags vs numerics, violations, and
//                  suppressed-but-unpredicted events
//   demo           canned demonstrations: hom, bell, router, jx, hypercube
//   catalog        resolve a unitary spec and print the matrix
//   phase-witness  solve the symmetric phase relation for a unitary
//
// Exit codes: 0 success, 1 usage/configuration error, 2 a check failed
// (a law-flagged event carries real probability, or a demo claim broke).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mmi/catalog.hpp"
#include "mmi/eigenbasis.hpp"
#include "mmi/occupations.hpp"
#include "mmi/permutation.hpp"
#include "mmi/probabilities.hpp"
#include "mmi/pure_state.hpp"
#include "mmi/suppression.hpp"
#include "mmi/table_io.hpp"
#include "mmi/tolerances.hpp"
#include "mmi/version.hpp"

namespace {

using mmi::AssignmentList;
using mmi::CatalogEntry;
using mmi::Complex;
using mmi::EigenPhase;
using mmi::LawVerdict;
using mmi::ModePermutation;
using mmi::OccupationList;
using mmi::OutputDistribution;
using mmi::PhaseVector;
using mmi::PureState;
using mmi::RunMetadata;
using mmi::Statistics;
using mmi::UnitaryMatrix;

std::string reconstruct_command(int argc, char** argv) {
  std::string cmd = "mmi";
  for (int i = 1; i < argc; ++i) {
    cmd += ' ';
    const std::string a = argv[i];
    cmd += a.find(' ') == std::string::npos ? a : "\"" + a + "\"";
  }
  return cmd;
}

void note_thread_env() {
  if (const char* env = std::getenv("MMI_THREADS")) {
    int threads = -1;
    try {
      threads = std::stoi(env);
    } catch (...) {
      threads = -1;
    }
    if (threads < 1)
      std::cerr << "warning: ignoring MMI_THREADS='" << env << "'\n";
    else if (threads > 1)
      std::cerr << "note: MMI_THREADS=" << threads
                << " requested; this build computes on a single thread\n";
  }
}

std::vector<OccupationList> enumerate_outputs(int modes, int particles, Statistics stat) {
  std::vector<OccupationList> out;
  if (stat == Statistics::kFermion) {
    mmi::FermionicOutputs stream(modes, particles);
    while (auto s = stream.next()) out.push_back(*s);
  } else {
    mmi::BosonicOutputs stream(modes, particles);
    while (auto s = stream.next()) out.push_back(*s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetry resolution: which permutation do the laws run against?
// ---------------------------------------------------------------------------

/// An explicit --perm wins; otherwise the spec's natural permutation, falling
/// back to its lowest power that leaves the input invariant (an input can be
/// symmetric under a power of the shift without being symmetric under the
/// shift itself).
std::optional<ModePermutation> resolve_symmetry(
    const std::optional<ModePermutation>& natural, const std::string& perm_text,
    const OccupationList& r) {
  if (!perm_text.empty()) {
    ModePermutation q = ModePermutation::parse(perm_text, r.modes());
    if (!mmi::is_invariant(r, q))
      throw std::invalid_argument("input " + r.str() + " is not invariant under " +
                                  q.cycle_str());
    return q;
  }
  if (!natural) return std::nullopt;
  if (natural->is_identity()) return natural;
  for (int k = 1; k < natural->order(); ++k) {
    ModePermutation q = natural->power(k);
    if (q.is_identity()) continue;
    if (mmi::is_invariant(r, q)) return q;
  }
  return std::nullopt;
}

struct SymmetryContext {
  ModePermutation permutation;
  std::vector<EigenPhase> column_phases;
  double residual = 0.0;
};

/// Resolves the permutation and solves the phase relation for the unitary;
/// empty when the configuration offers no usable symmetry.
std::optional<SymmetryContext> symmetric_context(const UnitaryMatrix& u,
                                                 const std::optional<ModePermutation>& natural,
                                                 const std::string& perm_text,
                                                 const OccupationList& r) {
  const auto q = resolve_symmetry(natural, perm_text, r);
  if (!q) return std::nullopt;
  const auto witness = mmi::verify_symmetric_phase_relation(u, *q);
  if (!witness) return std::nullopt;
  return SymmetryContext{*q, witness->eigenphases, witness->residual};
}

std::vector<LawVerdict> classify_all(const SymmetryContext& ctx, const OccupationList& r,
                                     const std::vector<std::pair<OccupationList, double>>& events,
                                     Statistics stat) {
  std::vector<LawVerdict> verdicts;
  verdicts.reserve(events.size());
  for (const auto& [s, p] : events)
    verdicts.push_back(
        mmi::classify_event(ctx.column_phases, ctx.permutation, r, s, stat));
  return verdicts;
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

struct TableConfig {
  std::string unitary_spec;
  std::string perm_text;
  std::string input;
  std::string stat_name = "boson";
  std::string theta_text = "0";
  std::string sigma_text = "0";
  int samples = 1;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string output_path;
};

int emit_table(const OutputDistribution& dist, const std::vector<LawVerdict>& verdicts,
               const RunMetadata& meta, const std::string& format,
               const std::string& path) {
  std::ostringstream buf;
  if (format == "json")
    mmi::write_table_json(buf, dist, verdicts, meta);
  else
    mmi::write_table_csv(buf, dist, verdicts, meta);
  if (path.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file " + path);
    out << buf.str();
  }
  // A law-flagged event with real probability is a soundness violation.
  for (std::size_t i = 0; i < verdicts.size(); ++i)
    if (verdicts[i].law_predicted && dist.events()[i].second >= mmi::kSoundnessTol) {
      std::cerr << "soundness violation: law-flagged event "
                << dist.events()[i].first.str() << " has probability "
                << dist.events()[i].second << "\n";
      return 2;
    }
  return 0;
}

int run_table(const TableConfig& cfg, const std::string& command) {
  const OccupationList r = OccupationList::parse(cfg.input);
  const Statistics stat = mmi::parse_statistics(cfg.stat_name);
  const RunMetadata meta{mmi::kVersion, command};

  if (!cfg.perm_text.empty()) {
    // Averaged table over randomized eigenbasis realizations of a permutation.
    const ModePermutation p = ModePermutation::parse(cfg.perm_text, r.modes());
    const PhaseVector theta = PhaseVector::parse(cfg.theta_text, r.modes());
    const PhaseVector sigma = PhaseVector::parse(cfg.sigma_text, r.modes());
    const OutputDistribution dist = mmi::mean_distribution_over_random_bases(
        p, r, theta, sigma, stat, cfg.samples, cfg.seed);
    std::vector<LawVerdict> verdicts;
    verdicts.reserve(dist.events().size());
    for (const auto& [s, prob] : dist.events())
      verdicts.push_back(mmi::classify_event(p, r, s, stat));
    return emit_table(dist, verdicts, meta, cfg.format, cfg.output_path);
  }

  // Deterministic table for a named unitary.
  const CatalogEntry entry = mmi::parse_unitary_spec(cfg.unitary_spec);
  if (entry.unitary.dim() != r.modes())
    throw std::invalid_argument("input has " + std::to_string(r.modes()) +
                                " modes but the unitary has " +
                                std::to_string(entry.unitary.dim()));
  const OutputDistribution dist =
      mmi::output_distribution(entry.unitary, r, stat, cfg.unitary_spec);
  std::vector<LawVerdict> verdicts;
  try {
    if (const auto ctx =
            symmetric_context(entry.unitary, entry.natural_permutation, "", r))
      verdicts = classify_all(*ctx, r, dist.events(), stat);
  } catch (const std::exception& e) {
    std::cerr << "note: emitting probabilities only (" << e.what() << ")\n";
  }
  if (verdicts.empty())
    std::cerr << "note: no usable symmetry for this input; law columns left empty\n";
  return emit_table(dist, verdicts, meta, cfg.format, cfg.output_path);
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckConfig {
  std::string unitary_spec;
  std::string perm_text;
  std::string input;
  std::string stat_name = "boson";
  int list_limit = 16;
};

int run_check(const CheckConfig& cfg) {
  const OccupationList r = OccupationList::parse(cfg.input);
  const Statistics stat = mmi::parse_statistics(cfg.stat_name);
  const CatalogEntry entry = mmi::parse_unitary_spec(cfg.unitary_spec);
  if (entry.unitary.dim() != r.modes())
    throw std::invalid_argument("input has " + std::to_string(r.modes()) +
                                " modes but the unitary has " +
                                std::to_string(entry.unitary.dim()));

  const auto q = resolve_symmetry(entry.natural_permutation, cfg.perm_text, r);
  if (!q)
    throw std::invalid_argument(
        "no symmetry applies: the input is not invariant under the natural "
        "permutation or any of its powers; pass --perm explicitly");
  const auto witness = mmi::verify_symmetric_phase_relation(entry.unitary, *q);
  if (!witness)
    throw std::invalid_argument("the unitary does not satisfy the phase relation for " +
                                q->cycle_str());
  const SymmetryContext ctx{*q, witness->eigenphases, witness->residual};

  const OutputDistribution dist =
      mmi::output_distribution(entry.unitary, r, stat, cfg.unitary_spec);
  const std::vector<LawVerdict> verdicts = classify_all(ctx, r, dist.events(), stat);

  int flagged = 0;
  double max_flagged = 0.0;
  std::vector<std::pair<OccupationList, double>> violations;
  std::vector<std::pair<OccupationList, double>> unpredicted;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& [s, p] = dist.events()[i];
    if (verdicts[i].law_predicted) {
      ++flagged;
      max_flagged = std::max(max_flagged, p);
      if (p >= mmi::kSoundnessTol) violations.push_back({s, p});
    } else if (p < mmi::kZeroProbability) {
      unpredicted.push_back({s, p});
    }
  }

  std::cout << "check: " << cfg.unitary_spec << " [" << mmi::statistics_name(stat)
            << "]\n";
  std::cout << "input: " << r.str() << "  (assignment "
            << mmi::occupation_to_assignment(r).str() << ", N=" << r.total() << ")\n";
  std::cout << "symmetry: " << ctx.permutation.cycle_str()
            << "  (phase-relation residual " << ctx.residual << ")\n";
  try {
    std::cout << "initial eigenvalue distribution: "
              << mmi::initial_eigenvalue_distribution(ctx.permutation, r).str() << "\n";
  } catch (const std::exception&) {
    // Multiply occupied inputs have no single-particle eigenvalue split.
  }
  std::cout << "events checked: " << dist.events().size() << "\n";
  std::cout << "law-predicted: " << flagged
            << "  max probability among them: " << max_flagged << "\n";
  std::cout << "numerically zero but unpredicted: " << unpredicted.size() << "\n";
  int listed = 0;
  for (const auto& [s, p] : unpredicted) {
    if (listed++ >= cfg.list_limit) {
      std::cout << "  ...\n";
      break;
    }
    std::cout << "  " << mmi::occupation_to_assignment(s).str() << "  probability " << p
              << "  final eigenvalues "
              << mmi::final_eigenvalue_distribution(ctx.column_phases, s).str() << "\n";
  }
  std::cout << "violations (law-flagged with probability >= " << mmi::kSoundnessTol
            << "): " << violations.size() << "\n";
  for (const auto& [s, p] : violations)
    std::cout << "  " << s.str() << "  probability " << p << "\n";
  if (!violations.empty()) return 2;
  std::cout << "ok\n";
  return 0;
}

// ---------------------------------------------------------------------------
// demo
// ---------------------------------------------------------------------------

bool approx(double a, double b) { return std::abs(a - b) < 1e-10; }

/// Like transition_probability, but bunched fermionic outputs count as an
/// exact zero instead of a domain error.
double demo_probability(const UnitaryMatrix& u, const OccupationList& r,
                        const OccupationList& s, Statistics stat) {
  if (stat == Statistics::kFermion && !s.single_occupancy()) return 0.0;
  return mmi::transition_probability(u, r, s, stat);
}

int run_demo_hom() {
  const UnitaryMatrix u = mmi::sylvester_unitary(1);
  const OccupationList r = OccupationList::parse("1,1");
  std::cout << "two-mode balanced coupler, one particle in each input port\n\n";
  std::cout << "statistics        P(2,0)     P(1,1)     P(0,2)\n";
  bool ok = true;
  const std::vector<std::pair<Statistics, std::vector<double>>> expected = {
      {Statistics::kBoson, {0.5, 0.0, 0.5}},
      {Statistics::kFermion, {0.0, 1.0, 0.0}},
      {Statistics::kDistinguishable, {0.25, 0.5, 0.25}},
  };
  for (const auto& [stat, want] : expected) {
    const double p20 = demo_probability(u, r, OccupationList::parse("2,0"), stat);
    const double p11 = demo_probability(u, r, OccupationList::parse("1,1"), stat);
    const double p02 = demo_probability(u, r, OccupationList::parse("0,2"), stat);
    std::cout << std::left << std::setw(18) << mmi::statistics_name(stat) << std::setw(11)
              << p20 << std::setw(11) << p11 << std::setw(11) << p02 << "\n";
    ok = ok && approx(p20, want[0]) && approx(p11, want[1]) && approx(p02, want[2]);
  }
  std::cout << "\ncoincidences vanish for bosons; bunching vanishes for fermions\n";
  if (!ok) {
    std::cerr << "demo claim failed: distribution off its closed form\n";
    return 2;
  }
  return 0;
}

int run_demo_bell(const std::vector<double>& overlaps) {
  const ModePermutation swap2 = ModePermutation::parse("(1 2)", 2);
  const UnitaryMatrix u = mmi::sylvester_unitary(1);
  bool ok = true;
  for (const double g : overlaps) {
    mmi::ComplexMatrix gram = mmi::ComplexMatrix::identity(2);
    gram(0, 1) = gram(1, 0) = {g, 0.0};
    const mmi::InternalSpace space{std::move(gram)};
    std::cout << "internal overlap g = " << g << "\n";
    for (int k = 0; k < 2; ++k) {
      const PureState in = mmi::build_entangled(AssignmentList::parse("(1,2)"), {0, 1},
                                                space, swap2, k);
      const PureState evo = mmi::evolve(in, u);
      const double p20 = mmi::mode_occupation_probability(evo, OccupationList::parse("2,0"));
      const double p11 = mmi::mode_occupation_probability(evo, OccupationList::parse("1,1"));
      const double p02 = mmi::mode_occupation_probability(evo, OccupationList::parse("0,2"));
      std::cout << "  " << (k == 0 ? "symmetric pair     " : "antisymmetric pair ")
                << in.str({"up", "down"}) << "\n";
      std::cout << "    evolves to " << evo.str({"up", "down"}) << "\n";
      std::cout << "    P(2,0)=" << p20 << "  P(1,1)=" << p11 << "  P(0,2)=" << p02
                << "\n";
      if (k == 0)
        ok = ok && p11 < 1e-10 && approx(p20, 0.5) && approx(p02, 0.5);
      else
        ok = ok && p20 < 1e-10 && p02 < 1e-10 && approx(p11, 1.0);
    }
  }
  std::cout << "the pair's exchange symmetry, not the labels, fixes the zeros\n";
  if (!ok) {
    std::cerr << "demo claim failed: bell-pair distribution off its closed form\n";
    return 2;
  }
  return 0;
}

int run_demo_router(int m, int k) {
  if (m < 2 || m > 16) throw std::invalid_argument("router: need 2 <= m <= 16");
  if (k < 0 || k >= m) throw std::invalid_argument("router: need 0 <= k < m");
  const ModePermutation cyc = mmi::fourier_cyclic_shift(m, 1);
  OccupationList r = mmi::assignment_to_occupation(AssignmentList::parse("(1)"), m);
  const PureState state = mmi::build_superposition(r, cyc, k);
  const auto basis = mmi::canonical_eigenbasis(cyc);
  const PureState evo = mmi::evolve(state, basis.basis);
  const int target = 1 + (m - k) % m;
  std::cout << m << "-mode router, input superposition with phase index k = " << k
            << "\n";
  std::cout << "input state: " << state.str() << "\n";
  std::cout << "predicted output mode: " << target << "\n\n";
  std::cout << "mode   probability\n";
  bool ok = true;
  for (int mode = 1; mode <= m; ++mode) {
    const OccupationList s = mmi::assignment_to_occupation(
        AssignmentList::parse("(" + std::to_string(mode) + ")"), m);
    const double p = mmi::mode_occupation_probability(evo, s);
    std::cout << std::left << std::setw(7) << mode << p
              << (mode == target ? "   <- predicted" : "") << "\n";
    ok = ok && (mode == target ? approx(p, 1.0) : p < 1e-10);
  }
  const auto report = mmi::verify_pure_state_suppression(state, cyc, basis,
                                                         PhaseVector::zeros(m));
  std::cout << "\nlaw-flagged modes: " << report.law_flagged << " of "
            << report.outputs_checked << "; max flagged probability "
            << report.max_flagged_probability << "\n";
  if (!ok || !report.violations.empty()) {
    std::cerr << "demo claim failed: probability did not concentrate on the predicted "
                 "mode\n";
    return 2;
  }
  return 0;
}

int run_demo_jx(int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("jx: need odd n >= 3 for the parity demonstration");
  const UnitaryMatrix u = mmi::jx_unitary(n);
  const int center = (n + 1) / 2;
  const OccupationList r = mmi::assignment_to_occupation(
      AssignmentList::parse("(" + std::to_string(center) + ")"), n);
  std::cout << "mirror-symmetric spin multiport, n = " << n
            << ", one particle entering the central mode " << center << "\n\n";
  std::cout << "mode   parity   probability\n";
  bool ok = true;
  for (int mode = 1; mode <= n; ++mode) {
    const OccupationList s = mmi::assignment_to_occupation(
        AssignmentList::parse("(" + std::to_string(mode) + ")"), n);
    const double p = mmi::transition_probability(u, r, s, Statistics::kBoson);
    const bool even = mode % 2 == 0;
    std::cout << std::left << std::setw(7) << mode << std::setw(9)
              << (even ? "even" : "odd") << p << (even ? "   (suppressed)" : "")
              << "\n";
    if (even) ok = ok && p < 1e-10;
  }
  std::cout << "\na single particle from the central mode only ever exits an odd mode,\n"
               "for any exchange statistics\n";
  if (!ok) {
    std::cerr << "demo claim failed: an even mode received probability\n";
    return 2;
  }
  return 0;
}

int run_demo_hypercube(int d) {
  if (d < 1 || d > 4) throw std::invalid_argument("hypercube: need 1 <= d <= 4");
  const int n = 1 << d;
  const UnitaryMatrix us = mmi::sylvester_unitary(d);
  const UnitaryMatrix uh = mmi::hypercube_unitary(d);
  std::cout << "sign-pattern vs phase-pattern multiport on " << n << " modes (d = " << d
            << ")\n\n";
  bool ok = true;
  std::vector<int> halvings;
  for (int p = 2; p <= n; p *= 2) halvings.push_back(p);
  for (int mask = 1; mask < (1 << halvings.size()); ++mask) {
    std::vector<int> subset;
    for (std::size_t b = 0; b < halvings.size(); ++b)
      if (mask & (1 << b)) subset.push_back(halvings[b]);
    const ModePermutation p = mmi::hypercube_permutation(subset, n);
    // A two-particle input on one orbit of the reflection.
    const int partner = p.apply(0);
    OccupationList r = mmi::assignment_to_occupation(
        AssignmentList::parse("(1," + std::to_string(partner + 1) + ")"), n);
    const auto witness = mmi::verify_symmetric_phase_relation(us, p);
    if (!witness) throw std::logic_error("phase relation unexpectedly absent");
    std::set<std::string> zero_s, zero_h;
    int law_flagged = 0;
    int outputs = 0;
    mmi::BosonicOutputs stream(n, 2);
    while (auto s = stream.next()) {
      ++outputs;
      if (mmi::transition_probability(us, r, *s, Statistics::kBoson) < 1e-10)
        zero_s.insert(s->str());
      if (mmi::transition_probability(uh, r, *s, Statistics::kBoson) < 1e-10)
        zero_h.insert(s->str());
      if (mmi::boson_law_suppressed(witness->eigenphases, *s))
        if (zero_s.count(s->str())) ++law_flagged;
    }
    std::cout << "reflections {";
    for (std::size_t i = 0; i < subset.size(); ++i)
      std::cout << (i ? "," : "") << subset[i];
    std::cout << "}: input modes (1," << partner + 1 << "): " << zero_s.size() << " of "
              << outputs << " outputs suppressed, " << law_flagged
              << " law-flagged; both multiports agree: "
              << (zero_s == zero_h ? "yes" : "NO") << "\n";
    ok = ok && zero_s == zero_h && law_flagged == static_cast<int>(zero_s.size());
  }
  std::cout << "\nthe two multiports share every suppressed output; the sign products "
               "predict all of them here\n";
  if (!ok) {
    std::cerr << "demo claim failed: suppression sets disagree\n";
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// catalog / phase-witness
// ---------------------------------------------------------------------------

int run_catalog(const std::string& spec, const std::string& format) {
  if (spec.empty()) {
    std::cout << "unitary families:\n"
              << "  fourier:n=<modes>        cyclic interferometer; natural permutation "
                 "is the one-step shift\n"
              << "  sylvester:d=<doublings>  2^d-mode balanced multiport with real "
                 "sign pattern\n"
              << "  hypercube:d=<doublings>  2^d-mode balanced multiport with "
                 "quarter-turn phases\n"
              << "  jx:n=<modes>             spin-rotation multiport; natural "
                 "permutation is the mirror\n"
              << "  eigenbasis:perm=(...)[,n=..][,seed=..][,theta=..][,sigma=..]\n"
              << "                           explicit eigenbasis of a mode permutation "
                 "(canonical unless seeded)\n"
              << "examples:\n"
              << "  mmi catalog fourier:n=4\n"
              << "  mmi catalog \"eigenbasis:perm=(1 2 3)(4 5 6),seed=7\" --format json\n";
    return 0;
  }
  const CatalogEntry entry = mmi::parse_unitary_spec(spec);
  std::cout << "name: " << entry.name << "\n";
  std::cout << "dimension: " << entry.unitary.dim() << "\n";
  std::cout << "unitarity defect: " << entry.unitary.mat().unitarity_defect() << "\n";
  std::cout << "natural permutation: "
            << (entry.natural_permutation ? entry.natural_permutation->cycle_str()
                                          : std::string("none"))
            << "\n";
  if (format == "json") {
    std::cout << mmi::matrix_to_json(entry.unitary.mat()) << "\n";
    return 0;
  }
  const int n = entry.unitary.dim();
  std::cout << std::showpos << std::fixed << std::setprecision(4);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Complex z = entry.unitary(r, c);
      std::cout << (c ? "  " : "") << z.real() << z.imag() << "i";
    }
    std::cout << "\n";
  }
  std::cout.copyfmt(std::ios(nullptr));
  return 0;
}

int run_phase_witness(const std::string& spec, const std::string& perm_text) {
  const CatalogEntry entry = mmi::parse_unitary_spec(spec);
  std::optional<ModePermutation> p;
  if (!perm_text.empty())
    p = ModePermutation::parse(perm_text, entry.unitary.dim());
  else if (entry.natural_permutation)
    p = entry.natural_permutation;
  else
    throw std::invalid_argument("this unitary has no natural permutation; pass --perm");
  std::cout << "unitary: " << spec << "\n";
  std::cout << "permutation: " << p->cycle_str() << "\n";
  const auto witness = mmi::verify_symmetric_phase_relation(entry.unitary, *p);
  if (!witness) {
    std::cout << "no consistent phase relation within tolerance\n";
    return 2;
  }
  std::cout << "relation holds; residual " << witness->residual << "\n\n";
  std::cout << "column   eigenphase (turns)   eigenvalue\n";
  for (std::size_t k = 0; k < witness->eigenphases.size(); ++k) {
    const Complex v = witness->eigenphases[k].value();
    std::cout << std::left << std::setw(9) << k + 1 << std::setw(21)
              << witness->eigenphases[k].str() << v.real()
              << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i\n";
  }
  std::cout << "mode-side phases (radians):";
  for (double t : witness->local_phase.radians) std::cout << " " << t;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  note_thread_env();
  CLI::App app{"permutation-symmetric multimode interference workbench"};
  app.set_version_flag("--version", std::string("mmi ") + mmi::kVersion);
  app.require_subcommand(1);

  // table
  TableConfig table_cfg;
  CLI::App* table = app.add_subcommand("table", "emit an output-probability table");
  auto* unitary_opt =
      table->add_option("--unitary,-u", table_cfg.unitary_spec,
                        "unitary spec, e.g. fourier:n=12 or \"eigenbasis:perm=(1 2)\"");
  auto* perm_opt = table->add_option(
      "--perm,-p", table_cfg.perm_text,
      "mode permutation in cycle notation; averages over randomized eigenbases");
  table->add_option("--input,-i", table_cfg.input, "input occupation, e.g. 1,1,0,0")
      ->required();
  table->add_option("--stat,-s", table_cfg.stat_name,
                    "boson | fermion | distinguishable");
  auto* samples_opt = table->add_option("--samples", table_cfg.samples,
                                        "number of randomized eigenbasis realizations")
                          ->check(CLI::PositiveNumber);
  auto* seed_opt = table->add_option("--seed", table_cfg.seed,
                                     "base seed for the randomized realizations");
  table->add_option("--theta", table_cfg.theta_text,
                    "input-side local phases in radians (or 0)");
  table->add_option("--sigma", table_cfg.sigma_text,
                    "output-side local phases in radians (or 0)");
  table->add_option("--format,-f", table_cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--output,-o", table_cfg.output_path, "output file (default stdout)");
  perm_opt->excludes(unitary_opt);
  perm_opt->needs(samples_opt);
  samples_opt->needs(seed_opt);
  samples_opt->needs(perm_opt);
  seed_opt->needs(samples_opt);

  // check
  CheckConfig check_cfg;
  CLI::App* check = app.add_subcommand(
      "check", "verify the suppression laws against the computed probabilities");
  check->add_option("--unitary,-u", check_cfg.unitary_spec, "unitary spec")->required();
  check->add_option("--perm,-p", check_cfg.perm_text,
                    "override the permutation the laws run against");
  check->add_option("--input,-i", check_cfg.input, "input occupation")->required();
  check->add_option("--stat,-s", check_cfg.stat_name, "boson | fermion | distinguishable");
  check->add_option("--limit", check_cfg.list_limit,
                    "max unpredicted events listed individually");

  // demo
  CLI::App* demo = app.add_subcommand("demo", "canned physics demonstrations");
  demo->require_subcommand(1);
  CLI::App* demo_hom =
      demo->add_subcommand("hom", "two-particle interference at a balanced coupler");
  std::vector<double> bell_overlaps{0.0, 0.3, 0.9};
  CLI::App* demo_bell =
      demo->add_subcommand("bell", "entangled pairs through the balanced coupler");
  demo_bell->add_option("--gram", bell_overlaps,
                        "internal overlaps to sweep (default 0 0.3 0.9)");
  int router_m = 4, router_k = 1;
  CLI::App* demo_router =
      demo->add_subcommand("router", "phased superposition exiting a single mode");
  demo_router->add_option("--m", router_m, "number of modes (cycle length)");
  demo_router->add_option("--k", router_k, "phase index of the input superposition");
  int jx_n = 5;
  CLI::App* demo_jx =
      demo->add_subcommand("jx", "odd/even mode parity at the spin multiport");
  demo_jx->add_option("--n", jx_n, "number of modes (odd)");
  int hyper_d = 3;
  CLI::App* demo_hyper = demo->add_subcommand(
      "hypercube", "matched suppression of the sign- and phase-pattern multiports");
  demo_hyper->add_option("--d", hyper_d, "doublings (modes = 2^d)");

  // catalog
  std::string catalog_spec, catalog_format = "text";
  CLI::App* catalog =
      app.add_subcommand("catalog", "resolve a unitary spec and print the matrix");
  catalog->add_option("spec", catalog_spec, "unitary spec (omit to list families)");
  catalog->add_option("--format,-f", catalog_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  // phase-witness
  std::string witness_spec, witness_perm;
  CLI::App* phase_witness = app.add_subcommand(
      "phase-witness", "solve the symmetric phase relation for a unitary");
  phase_witness->add_option("spec", witness_spec, "unitary spec")->required();
  phase_witness->add_option("--perm,-p", witness_perm,
                            "permutation in cycle notation (default: natural)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const std::string command = reconstruct_command(argc, argv);
  try {
    if (app.got_subcommand(table)) {
      if (table_cfg.unitary_spec.empty() && table_cfg.perm_text.empty())
        throw std::invalid_argument("table needs --unitary or --perm");
      return run_table(table_cfg, command);
    }
    if (app.got_subcommand(check)) return run_check(check_cfg);
    if (app.got_subcommand(demo)) {
      if (demo->got_subcommand(demo_hom)) return run_demo_hom();
      if (demo->got_subcommand(demo_bell)) return run_demo_bell(bell_overlaps);
      if (demo->got_subcommand(demo_router)) return run_demo_router(router_m, router_k);
      if (demo->got_subcommand(demo_jx)) return run_demo_jx(jx_n);
      if (demo->got_subcommand(demo_hyper)) return run_demo_hypercube(hyper_d);
    }
    if (app.got_subcommand(catalog)) return run_catalog(catalog_spec, catalog_format);
    if (app.got_subcommand(phase_witness))
      return run_phase_witness(witness_spec, witness_perm);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
