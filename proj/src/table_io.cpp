#include "mmi/table_io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "mmi/tolerances.hpp"

namespace mmi {

namespace {

using nlohmann::json;

std::string format_probability(double p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", p);
  return buf;
}

/// CSV value in double quotes (fields like "1,1,0,2" contain commas).
std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void check_alignment(const OutputDistribution& dist,
                     const std::vector<LawVerdict>& verdicts) {
  if (verdicts.empty()) return;
  if (verdicts.size() != dist.events().size())
    throw std::invalid_argument("verdict list does not match the event list");
  for (std::size_t i = 0; i < verdicts.size(); ++i)
    if (!(verdicts[i].event == dist.events()[i].first))
      throw std::invalid_argument("verdict list out of order with the event list");
}

json matrix_to_json_value(const ComplexMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json_value(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument("matrix JSON must be a nonempty array of rows");
  const int nr = static_cast<int>(rows.size());
  const int nc = static_cast<int>(rows.at(0).size());
  ComplexMatrix m(nr, nc);
  for (int r = 0; r < nr; ++r) {
    const json& row = rows.at(static_cast<std::size_t>(r));
    if (static_cast<int>(row.size()) != nc)
      throw std::invalid_argument("matrix JSON rows have unequal lengths");
    for (int c = 0; c < nc; ++c) {
      const json& cell = row.at(static_cast<std::size_t>(c));
      if (!cell.is_array() || cell.size() != 2)
        throw std::invalid_argument("matrix JSON entries must be [re, im] pairs");
      m(r, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace

void write_table_csv(std::ostream& out, const OutputDistribution& dist,
                     const std::vector<LawVerdict>& verdicts, const RunMetadata& meta) {
  check_alignment(dist, verdicts);
  out << "# tool: mmi " << meta.tool_version << "\n";
  if (!meta.command.empty()) out << "# command: " << meta.command << "\n";
  out << "# statistics: " << statistics_name(dist.statistics()) << "\n";
  out << "# input: " << dist.input().str() << "\n";
  out << "# unitary: " << dist.unitary_id() << "\n";
  out << "# seed: " << dist.seed() << "\n";
  out << "# samples: " << dist.samples() << "\n";
  out << "# zero_threshold: " << format_probability(kZeroProbability) << "\n";
  out << "occupation,assignment,probability,law_predicted,numerically_zero,domain\n";
  for (std::size_t i = 0; i < dist.events().size(); ++i) {
    const auto& [s, p] = dist.events()[i];
    const bool zero = p < kZeroProbability;
    out << quoted(s.str()) << "," << quoted(occupation_to_assignment(s).str()) << ","
        << (zero ? "0.0" : format_probability(p)) << ",";
    if (!verdicts.empty()) {
      const auto& v = verdicts[i];
      out << (v.law_predicted ? 1 : 0) << "," << (zero ? 1 : 0) << ","
          << domain_label(v.domain);
    } else {
      out << "," << (zero ? 1 : 0) << ",";
    }
    out << "\n";
  }
}

void write_table_json(std::ostream& out, const OutputDistribution& dist,
                      const std::vector<LawVerdict>& verdicts, const RunMetadata& meta) {
  check_alignment(dist, verdicts);
  json doc;
  doc["tool"] = "mmi";
  doc["version"] = meta.tool_version;
  doc["command"] = meta.command;
  doc["statistics"] = statistics_name(dist.statistics());
  doc["input"] = dist.input().values();
  doc["unitary"] = dist.unitary_id();
  doc["seed"] = dist.seed();
  doc["samples"] = dist.samples();
  doc["zero_threshold"] = kZeroProbability;
  doc["sum_tolerance"] = kSumTol;
  doc["total_probability"] = dist.total();
  json events = json::array();
  for (std::size_t i = 0; i < dist.events().size(); ++i) {
    const auto& [s, p] = dist.events()[i];
    const bool zero = p < kZeroProbability;
    json e;
    e["occupation"] = s.values();
    json assignment = json::array();
    const AssignmentList d = occupation_to_assignment(s);
    for (int mode : d) assignment.push_back(mode + 1);
    e["assignment"] = std::move(assignment);
    e["probability"] = p;  // raw value, never clamped
    e["probability_table"] = zero ? 0.0 : p;
    e["numerically_zero"] = zero;
    if (!verdicts.empty()) {
      const auto& v = verdicts[i];
      e["law_predicted"] = v.law_predicted;
      e["domain"] = domain_label(v.domain);
      e["single_particle_forbidden"] = v.single_particle_forbidden;
      switch (dist.statistics()) {
        case Statistics::kBoson:
          e["boson_suppressed"] = v.boson_suppressed;
          break;
        case Statistics::kFermion:
          e["fermion_adapted_suppressed"] = v.fermion_adapted_suppressed;
          e["fermion_extended_suppressed"] = v.fermion_extended_suppressed;
          break;
        case Statistics::kDistinguishable:
          break;
      }
      if (v.pure_state_suppressed) e["pure_state_suppressed"] = *v.pure_state_suppressed;
    }
    events.push_back(std::move(e));
  }
  doc["events"] = std::move(events);
  out << doc.dump(2) << "\n";
}

std::string matrix_to_json(const ComplexMatrix& m) {
  return matrix_to_json_value(m).dump();
}

ComplexMatrix matrix_from_json(const std::string& text) {
  return matrix_from_json_value(json::parse(text));
}

PureState pure_state_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (!doc.contains("statistics"))
    throw std::invalid_argument("pure-state JSON needs a \"statistics\" field");
  const Statistics stat = parse_statistics(doc.at("statistics").get<std::string>());
  InternalSpace space = InternalSpace::trivial();
  if (doc.contains("gram"))
    space = InternalSpace(matrix_from_json_value(doc.at("gram")));
  else if (doc.contains("labels"))
    space = InternalSpace::orthonormal(doc.at("labels").get<int>());
  if (!doc.contains("terms") || !doc.at("terms").is_array() || doc.at("terms").empty())
    throw std::invalid_argument("pure-state JSON needs a nonempty \"terms\" array");
  std::vector<LabeledFockTerm> terms;
  for (const json& t : doc.at("terms")) {
    const json& coeff = t.at("coefficient");
    LabeledFockTerm term;
    if (coeff.is_array()) {
      if (coeff.size() != 2)
        throw std::invalid_argument("coefficient must be [re, im] or a number");
      term.coefficient = Complex(coeff.at(0).get<double>(), coeff.at(1).get<double>());
    } else {
      term.coefficient = Complex(coeff.get<double>(), 0.0);
    }
    for (const json& p : t.at("particles")) {
      if (!p.is_array() || p.size() != 2)
        throw std::invalid_argument("particles must be [mode, label] pairs");
      // 1-based in the file.
      term.particles.push_back({p.at(0).get<int>() - 1, p.at(1).get<int>() - 1});
    }
    terms.push_back(std::move(term));
  }
  return PureState(stat, std::move(space), std::move(terms));
}

}  // namespace mmi
