#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mmi/matrix.hpp"
#include "mmi/probabilities.hpp"
#include "mmi/pure_state.hpp"
#include "mmi/suppression.hpp"

namespace mmi {

/// Reproducibility stamp embedded in every emitted table: the tool version
/// and the command (or equivalent configuration) that produced the data.
struct RunMetadata {
  std::string tool_version;
  std::string command;
};

/// Writes the distribution and its aligned per-event verdicts as CSV with
/// the fixed schema
///   occupation,assignment,probability,law_predicted,numerically_zero,domain
/// preceded by '#' metadata lines (version, command, statistics, input,
/// unitary id, seed, samples, zero threshold). Probabilities below
/// kZeroProbability print as 0.0 with the numerically_zero flag set; other
/// probabilities print with 17 significant digits. The verdict list must
/// match the event list one-to-one (same order); pass an empty vector to
/// write a probability-only table with empty flag columns.
void write_table_csv(std::ostream& out, const OutputDistribution& dist,
                     const std::vector<LawVerdict>& verdicts, const RunMetadata& meta);

/// Same data as a single JSON document. JSON retains the raw probability for
/// every event alongside the clamped table value.
void write_table_json(std::ostream& out, const OutputDistribution& dist,
                      const std::vector<LawVerdict>& verdicts, const RunMetadata& meta);

/// Matrix serialization: nested arrays of [re, im] pairs, row-major.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

/// Pure-state description:
/// {
///   "statistics": "boson" | "fermion",
///   "gram": [[[re,im], ...], ...],            // optional; identity if absent
///   "labels": 2,                              // optional; orthonormal dim
///   "terms": [
///     {"coefficient": [re, im], "particles": [[mode, label], ...]}, ...
///   ]
/// }
/// Modes and labels are 1-based in the file and 0-based in memory.
PureState pure_state_from_json(const std::string& text);

}  // namespace mmi
