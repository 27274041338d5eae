#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmi/catalog.hpp"
#include "mmi/eigenbasis.hpp"
#include "mmi/probabilities.hpp"
#include "mmi/table_io.hpp"
#include "mmi/tolerances.hpp"
#include "mmi/version.hpp"

using mmi::ComplexMatrix;
using mmi::LawVerdict;
using mmi::ModePermutation;
using mmi::OccupationList;
using mmi::OutputDistribution;
using mmi::RunMetadata;
using mmi::Statistics;
using mmi::UnitaryMatrix;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

/// Symmetric 6-mode setting with genuinely suppressed events: canonical
/// eigenbasis of (1 2 3)(4 5 6), one particle on each mode of the first cycle.
struct SymmetricSetting {
  ModePermutation p = ModePermutation::parse("(1 2 3)(4 5 6)", 6);
  OccupationList r = OccupationList::parse("1,1,1,0,0,0");
  OutputDistribution dist;
  std::vector<LawVerdict> verdicts;

  explicit SymmetricSetting(Statistics stat)
      : dist(mmi::output_distribution(mmi::canonical_eigenbasis(p).basis, r, stat,
                                      "eigenbasis:perm=(1 2 3)(4 5 6)")) {
    for (const auto& [s, prob] : dist.events())
      verdicts.push_back(mmi::classify_event(p, r, s, stat));
  }
};

}  // namespace

TEST_CASE("csv tables carry the fixed schema and metadata") {
  const SymmetricSetting setting(Statistics::kBoson);
  std::ostringstream out;
  mmi::write_table_csv(out, setting.dist, setting.verdicts,
                       {mmi::kVersion, "mmi table --demo"});
  const auto lines = lines_of(out.str());

  // Metadata preamble, then the header, then one row per event.
  std::size_t i = 0;
  CHECK(lines[i++] == std::string("# tool: mmi ") + mmi::kVersion);
  CHECK(lines[i++] == "# command: mmi table --demo");
  CHECK(lines[i++] == "# statistics: boson");
  CHECK(lines[i++] == "# input: 1,1,1,0,0,0");
  CHECK(lines[i++] == "# unitary: eigenbasis:perm=(1 2 3)(4 5 6)");
  CHECK(lines[i].rfind("# seed: ", 0) == 0);
  ++i;
  CHECK(lines[i].rfind("# samples: ", 0) == 0);
  ++i;
  CHECK(lines[i].rfind("# zero_threshold: ", 0) == 0);
  ++i;
  CHECK(lines[i++] == "occupation,assignment,probability,law_predicted,numerically_zero,domain");
  REQUIRE(lines.size() == i + setting.dist.events().size());

  for (std::size_t k = 0; k < setting.dist.events().size(); ++k) {
    const auto& [s, p] = setting.dist.events()[k];
    const std::string& row = lines[i + k];
    const std::string prefix =
        "\"" + s.str() + "\",\"" + mmi::occupation_to_assignment(s).str() + "\",";
    REQUIRE(row.rfind(prefix, 0) == 0);
    // Split the unquoted tail: probability,law_predicted,numerically_zero,domain.
    std::vector<std::string> fields;
    std::istringstream tail(row.substr(prefix.size()));
    std::string field;
    while (std::getline(tail, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 4);
    const bool zero = p < mmi::kZeroProbability;
    if (zero) {
      CHECK(fields[0] == "0.0");
      CHECK(fields[2] == "1");
    } else {
      // 17 significant digits round-trip the stored double exactly.
      CHECK(std::stod(fields[0]) == p);
      CHECK(fields[2] == "0");
    }
    CHECK(fields[1] == (setting.verdicts[k].law_predicted ? "1" : "0"));
    CHECK(fields[3] == mmi::domain_label(setting.verdicts[k].domain));
    // Predicted events really are numerically dead in this table.
    if (setting.verdicts[k].law_predicted) CHECK(p < 1e-10);
  }
  // The sweep contains both flavors of row.
  int flagged = 0, zero_rows = 0;
  for (std::size_t k = 0; k < setting.dist.events().size(); ++k) {
    flagged += setting.verdicts[k].law_predicted ? 1 : 0;
    zero_rows += setting.dist.events()[k].second < mmi::kZeroProbability ? 1 : 0;
  }
  CHECK(flagged > 0);
  CHECK(zero_rows > 0);
}

TEST_CASE("csv tables without verdicts leave the flag columns empty") {
  const UnitaryMatrix u = mmi::sylvester_unitary(1);
  const OutputDistribution dist = mmi::output_distribution(
      u, OccupationList::parse("1,1"), Statistics::kBoson, "sylvester:d=1");
  std::ostringstream out;
  mmi::write_table_csv(out, dist, {}, {mmi::kVersion, ""});
  const std::string text = out.str();
  // No command line when the command string is empty.
  CHECK(text.find("# command:") == std::string::npos);
  // The coincidence event is an exact cancellation: clamped and flagged zero,
  // with empty law columns on both sides.
  bool saw_coincidence = false;
  for (const auto& line : lines_of(text))
    if (line.rfind("\"1,1\"", 0) == 0) {
      CHECK(line == "\"1,1\",\"(1,2)\",0.0,,1,");
      saw_coincidence = true;
    }
  CHECK(saw_coincidence);
}

TEST_CASE("misaligned verdict lists are rejected") {
  SymmetricSetting setting(Statistics::kFermion);
  std::ostringstream out;
  // Truncated list.
  auto truncated = setting.verdicts;
  truncated.pop_back();
  CHECK_THROWS_AS(mmi::write_table_csv(out, setting.dist, truncated, {mmi::kVersion, ""}),
                  std::invalid_argument);
  // Right length, wrong order.
  auto rotated = setting.verdicts;
  std::swap(rotated.front(), rotated.back());
  CHECK_THROWS_AS(mmi::write_table_csv(out, setting.dist, rotated, {mmi::kVersion, ""}),
                  std::invalid_argument);
  CHECK_THROWS_AS(mmi::write_table_json(out, setting.dist, rotated, {mmi::kVersion, ""}),
                  std::invalid_argument);
  // Empty list is fine (probability-only table).
  CHECK_NOTHROW(mmi::write_table_json(out, setting.dist, {}, {mmi::kVersion, ""}));
}

TEST_CASE("json tables retain raw probabilities next to clamped ones") {
  const SymmetricSetting setting(Statistics::kBoson);
  std::ostringstream out;
  mmi::write_table_json(out, setting.dist, setting.verdicts,
                        {mmi::kVersion, "mmi table --format json"});
  const nlohmann::json doc = nlohmann::json::parse(out.str());

  CHECK(doc.at("tool") == "mmi");
  CHECK(doc.at("version") == mmi::kVersion);
  CHECK(doc.at("command") == "mmi table --format json");
  CHECK(doc.at("statistics") == "boson");
  CHECK(doc.at("input") == std::vector<int>{1, 1, 1, 0, 0, 0});
  CHECK(doc.at("unitary") == "eigenbasis:perm=(1 2 3)(4 5 6)");
  CHECK(doc.at("zero_threshold").get<double>() == mmi::kZeroProbability);
  CHECK(std::abs(doc.at("total_probability").get<double>() - 1.0) < mmi::kSumTol);

  const auto& events = doc.at("events");
  REQUIRE(events.size() == setting.dist.events().size());
  int clamped = 0;
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto& e = events[k];
    const auto& [s, p] = setting.dist.events()[k];
    CHECK(e.at("occupation") == s.values());
    // Assignments are 1-based on disk.
    const auto d = mmi::occupation_to_assignment(s);
    const auto stored = e.at("assignment").get<std::vector<int>>();
    REQUIRE(static_cast<int>(stored.size()) == d.particles());
    for (int a = 0; a < d.particles(); ++a) CHECK(stored[a] == d[a] + 1);
    // Raw value survives exactly; the table value is clamped.
    CHECK(e.at("probability").get<double>() == p);
    const bool zero = p < mmi::kZeroProbability;
    CHECK(e.at("numerically_zero").get<bool>() == zero);
    CHECK(e.at("probability_table").get<double>() == (zero ? 0.0 : p));
    if (zero && p != 0.0) ++clamped;
    CHECK(e.at("law_predicted").get<bool>() == setting.verdicts[k].law_predicted);
    CHECK(e.at("domain") == mmi::domain_label(setting.verdicts[k].domain));
    CHECK(e.at("boson_suppressed").get<bool>() == setting.verdicts[k].boson_suppressed);
    CHECK(!e.contains("fermion_adapted_suppressed"));
    CHECK(!e.contains("pure_state_suppressed"));
  }
  // At least one event shows a nonzero residue under the clamp, proving the
  // raw column carries information the table column does not.
  CHECK(clamped > 0);

  // Fermionic tables switch the per-law columns.
  const SymmetricSetting fsetting(Statistics::kFermion);
  std::ostringstream fout;
  mmi::write_table_json(fout, fsetting.dist, fsetting.verdicts, {mmi::kVersion, ""});
  const nlohmann::json fdoc = nlohmann::json::parse(fout.str());
  for (std::size_t k = 0; k < fdoc.at("events").size(); ++k) {
    const auto& e = fdoc.at("events")[k];
    CHECK(e.at("fermion_adapted_suppressed").get<bool>() ==
          fsetting.verdicts[k].fermion_adapted_suppressed);
    CHECK(e.at("fermion_extended_suppressed").get<bool>() ==
          fsetting.verdicts[k].fermion_extended_suppressed);
    CHECK(!e.contains("boson_suppressed"));
  }
}

TEST_CASE("matrix json round-trips exactly") {
  mmi::Rng rng(4242);
  const UnitaryMatrix u = mmi::haar_unitary(5, rng);
  const std::string text = mmi::matrix_to_json(u.mat());
  const ComplexMatrix back = mmi::matrix_from_json(text);
  CHECK(u.mat().max_abs_diff(back) == 0.0);

  CHECK_THROWS_AS(mmi::matrix_from_json("[]"), std::invalid_argument);
  CHECK_THROWS_AS(mmi::matrix_from_json("[[[1,0]],[[1,0],[0,1]]]"), std::invalid_argument);
  CHECK_THROWS_AS(mmi::matrix_from_json("[[5]]"), std::invalid_argument);
}

TEST_CASE("pure states parse from json with 1-based modes and labels") {
  // A singlet-like pair: orthonormal labels requested by count.
  const std::string text = R"({
    "statistics": "fermion",
    "labels": 2,
    "terms": [
      {"coefficient": [1.0, 0.0], "particles": [[1, 1], [2, 2]]},
      {"coefficient": [-1.0, 0.0], "particles": [[1, 2], [2, 1]]}
    ]
  })";
  const mmi::PureState parsed = mmi::pure_state_from_json(text);
  CHECK(parsed.statistics() == Statistics::kFermion);
  CHECK(parsed.internal().dim() == 2);
  CHECK(parsed.particle_count() == 2);
  REQUIRE(parsed.terms().size() == 2);
  // 1-based on disk, 0-based in memory.
  CHECK(parsed.terms()[0].particles ==
        std::vector<mmi::LabeledParticle>{{0, 0}, {1, 1}});
  const mmi::PureState direct(
      Statistics::kFermion, mmi::InternalSpace::orthonormal(2),
      {{mmi::Complex(1.0, 0.0), {{0, 0}, {1, 1}}},
       {mmi::Complex(-1.0, 0.0), {{0, 1}, {1, 0}}}});
  CHECK(std::abs(mmi::state_overlap(parsed.normalized(), direct.normalized()) -
                 mmi::Complex(1.0, 0.0)) < 1e-12);

  // Scalar coefficients and an explicit Gram matrix.
  const std::string gram_text = R"({
    "statistics": "boson",
    "gram": [[[1,0],[0.3,0.4]],[[0.3,-0.4],[1,0]]],
    "terms": [{"coefficient": 0.5, "particles": [[2, 1]]}]
  })";
  const mmi::PureState with_gram = mmi::pure_state_from_json(gram_text);
  CHECK(with_gram.internal().overlap(0, 1) == mmi::Complex(0.3, 0.4));
  REQUIRE(with_gram.terms().size() == 1);
  CHECK(with_gram.terms()[0].coefficient == mmi::Complex(0.5, 0.0));
  CHECK(with_gram.terms()[0].particles ==
        std::vector<mmi::LabeledParticle>{{1, 0}});

  // Neither "gram" nor "labels": a single internal state.
  const std::string plain = R"({
    "statistics": "boson",
    "terms": [{"coefficient": 1.0, "particles": [[1, 1], [1, 1]]}]
  })";
  CHECK(mmi::pure_state_from_json(plain).internal().dim() == 1);

  CHECK_THROWS_AS(mmi::pure_state_from_json(R"({"terms": []})"), std::invalid_argument);
  CHECK_THROWS_AS(mmi::pure_state_from_json(R"({"statistics": "boson", "terms": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(mmi::pure_state_from_json(
                      R"({"statistics": "boson",
                          "terms": [{"coefficient": 1.0, "particles": [[1]]}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(mmi::pure_state_from_json(
                      R"({"statistics": "boson",
                          "terms": [{"coefficient": [1,0,0], "particles": [[1,1]]}]})"),
                  std::invalid_argument);
}
