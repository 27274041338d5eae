#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmi/occupations.hpp"
#include "mmi/phase.hpp"

namespace mmi {

/// A bijection pi on n modes. Internally 0-based; all text I/O uses 1-based
/// mode labels. The cycle decomposition is computed once at construction:
/// cycles are listed by ascending smallest member, each cycle starting at its
/// smallest member and following repeated application of pi.
class ModePermutation {
 public:
  /// From the image table j -> pi(j), 0-based. Must be a bijection.
  explicit ModePermutation(std::vector<int> images);

  static ModePermutation identity(int n);

  /// Parses either cycle notation "(1 2 3)(4 5 6)" (fixed points may be
  /// omitted) or a one-line image list "2,3,1,...". n gives the number of
  /// modes; for the one-line form it must match the list length.
  static ModePermutation parse(const std::string& text, int n);

  int modes() const { return static_cast<int>(images_.size()); }

  /// pi(j), 0-based.
  int apply(int mode) const { return images_[static_cast<std::size_t>(mode)]; }

  /// pi^{-1}(j), 0-based.
  int apply_inverse(int mode) const {
    return inverse_[static_cast<std::size_t>(mode)];
  }

  ModePermutation inverse() const { return ModePermutation(inverse_); }

  /// pi^k for any integer k (negative powers via the inverse).
  ModePermutation power(std::int64_t k) const;

  bool is_identity() const;

  const std::vector<int>& images() const { return images_; }

  /// Cycles including fixed points, by ascending smallest member.
  const std::vector<std::vector<int>>& cycles() const { return cycles_; }

  /// Index into cycles() of the cycle containing the given mode.
  int cycle_of_mode(int mode) const {
    return cycle_index_[static_cast<std::size_t>(mode)];
  }

  int cycle_length_of_mode(int mode) const {
    return static_cast<int>(cycles_[static_cast<std::size_t>(cycle_of_mode(mode))].size());
  }

  /// lcm of all cycle lengths.
  std::int64_t order() const { return order_; }

  /// "(1 2 3)(4 5 6)" with 1-based labels; fixed points included as "(7)".
  std::string cycle_str() const;

  /// "2,3,1" with 1-based labels.
  std::string one_line_str() const;

  bool operator==(const ModePermutation& o) const { return images_ == o.images_; }

 private:
  std::vector<int> images_;
  std::vector<int> inverse_;
  std::vector<std::vector<int>> cycles_;
  std::vector<int> cycle_index_;
  std::int64_t order_ = 1;
};

/// True iff the occupation list is unchanged by the permutation,
/// i.e. r_{pi(j)} = r_j for every mode j.
bool is_invariant(const OccupationList& r, const ModePermutation& p);

/// Image occupation list: particles in mode j move to mode pi(j).
OccupationList apply_to_occupation(const ModePermutation& p, const OccupationList& r);

/// Eigenvalues of the n x n permutation operator P_{j,k} = delta_{pi(j),k}:
/// each cycle of length m contributes all m-th roots of unity.
EigenvalueMultiset permutation_eigenvalues(const ModePermutation& p);

/// Sign (+1/-1) of the particle reordering induced on an invariant
/// single-occupancy input when each particle hops from its mode j to pi(j):
/// the assignment list d(r) maps to the tuple (pi(d_1), ..., pi(d_N)), and
/// the returned value is the parity of the permutation that sorts that tuple
/// back into ascending order.
int induced_transposition_parity(const OccupationList& r, const ModePermutation& p);

}  // namespace mmi
