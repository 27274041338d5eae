#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mmi {

/// Particle numbers per mode: r = (r_1, ..., r_n) with r_j >= 0. Modes are
/// stored 0-based internally; all text I/O uses 1-based mode labels.
class OccupationList {
 public:
  explicit OccupationList(std::vector<int> occupations);

  /// Parses "1,1,0,2" (one entry per mode).
  static OccupationList parse(const std::string& text);

  int modes() const { return static_cast<int>(occ_.size()); }

  /// Total particle number N.
  int total() const { return total_; }

  int operator[](int mode) const { return occ_[static_cast<std::size_t>(mode)]; }

  /// True iff every mode holds at most one particle.
  bool single_occupancy() const;

  const std::vector<int>& values() const { return occ_; }

  auto begin() const { return occ_.begin(); }
  auto end() const { return occ_.end(); }

  bool operator==(const OccupationList& o) const { return occ_ == o.occ_; }
  bool operator<(const OccupationList& o) const { return occ_ < o.occ_; }

  /// "1,1,0,2"
  std::string str() const;

 private:
  std::vector<int> occ_;
  int total_ = 0;
};

/// The non-decreasing list of occupied modes, one entry per particle:
/// d(r) = (d_1 <= d_2 <= ... <= d_N). Stored 0-based; text I/O is 1-based.
class AssignmentList {
 public:
  AssignmentList() = default;
  explicit AssignmentList(std::vector<int> modes);

  /// Parses "(1,4,7,10)" or "1,4,7,10" (1-based mode labels).
  static AssignmentList parse(const std::string& text);

  int particles() const { return static_cast<int>(modes_.size()); }
  int operator[](int particle) const {
    return modes_[static_cast<std::size_t>(particle)];
  }
  const std::vector<int>& values() const { return modes_; }

  auto begin() const { return modes_.begin(); }
  auto end() const { return modes_.end(); }

  bool operator==(const AssignmentList& o) const { return modes_ == o.modes_; }

  /// "(1,4,7,10)" with 1-based mode labels.
  std::string str() const;

 private:
  std::vector<int> modes_;  // non-decreasing, 0-based
};

/// d(r) from r: mode j appears r_j times, ascending.
AssignmentList occupation_to_assignment(const OccupationList& r);

/// r from d(r), given the total number of modes n.
OccupationList assignment_to_occupation(const AssignmentList& d, int n);

/// Number of N-particle occupation lists on n modes: C(n+N-1, N).
std::uint64_t count_bosonic_outputs(int n, int particles);

/// Number of single-occupancy N-particle lists on n modes: C(n, N).
std::uint64_t count_fermionic_outputs(int n, int particles);

/// Enumerates all N-particle occupation lists on n modes in lexicographic
/// order of the assignment list d(s). For n = 2, N = 2 the order is
/// (2,0), (1,1), (0,2).
class BosonicOutputs {
 public:
  BosonicOutputs(int n, int particles);

  /// Advances to the next event; empty when exhausted.
  std::optional<OccupationList> next();

 private:
  int n_;
  int particles_;
  std::vector<int> assignment_;  // current d(s), 0-based
  bool done_ = false;
  bool first_ = true;
};

/// Enumerates all single-occupancy N-particle lists on n modes, in the same
/// lexicographic assignment-list order (i.e. combinations in ascending order).
class FermionicOutputs {
 public:
  FermionicOutputs(int n, int particles);

  std::optional<OccupationList> next();

 private:
  int n_;
  int particles_;
  std::vector<int> assignment_;
  bool done_ = false;
  bool first_ = true;
};

}  // namespace mmi
