#pragma once

#include <stdexcept>
#include <string>

namespace mmi {

/// Particle exchange statistics of an interference computation.
enum class Statistics { kBoson, kFermion, kDistinguishable };

inline const char* statistics_name(Statistics s) {
  switch (s) {
    case Statistics::kBoson: return "boson";
    case Statistics::kFermion: return "fermion";
    case Statistics::kDistinguishable: return "distinguishable";
  }
  throw std::logic_error("statistics_name: bad enum value");
}

inline Statistics parse_statistics(const std::string& name) {
  if (name == "boson" || name == "bosons" || name == "B") return Statistics::kBoson;
  if (name == "fermion" || name == "fermions" || name == "F") return Statistics::kFermion;
  if (name == "distinguishable" || name == "D") return Statistics::kDistinguishable;
  throw std::invalid_argument("unknown statistics '" + name +
                              "' (expected boson, fermion or distinguishable)");
}

}  // namespace mmi
