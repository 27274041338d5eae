#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmi/matrix.hpp"
#include "mmi/permutation.hpp"
#include "mmi/rng.hpp"

namespace mmi {

/// Local phases, one per mode: the diagonal unitary diag(e^{i phi_1}, ...).
struct PhaseVector {
  std::vector<double> radians;

  static PhaseVector zeros(int n) {
    return PhaseVector{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  }

  /// Parses "0.1,0,-0.5" (radians, one per mode) or the shorthand "0" for
  /// all-zero phases on n modes.
  static PhaseVector parse(const std::string& text, int n);

  int modes() const { return static_cast<int>(radians.size()); }

  ComplexMatrix diagonal() const;
};

/// An orthonormal eigenbasis A of a mode permutation pi together with the
/// eigenvalue attached to each column: P A = A diag(lambda) with
/// P_{j,k} = delta_{pi(j),k}. The eigenvalues are exact roots of unity.
struct EigenbasisRealization {
  UnitaryMatrix basis;
  std::vector<EigenPhase> column_phases;
  std::string provenance;  // "canonical" or "randomized:seed=<s>"
};

/// The n x n operator P_{j,k} = delta_{pi(j),k}.
ComplexMatrix permutation_matrix(const ModePermutation& p);

/// Eigenvalue attached to each canonical column, in canonical column order:
/// cycles by ascending smallest member; within a cycle of length m the
/// columns carry e^{2 pi i k/m} for k = 0, ..., m-1.
std::vector<EigenPhase> canonical_column_phases(const ModePermutation& p);

/// The canonical eigenbasis: the column for (cycle c, index k) is supported
/// on the modes of c with amplitude (1/sqrt(m)) e^{2 pi i k t/m} at the mode
/// reached after t applications of pi from the cycle's smallest member.
/// For a single n-cycle this is exactly the discrete-Fourier matrix.
EigenbasisRealization canonical_eigenbasis(const ModePermutation& p);

/// A randomized eigenbasis: the canonical columns mixed by independent
/// Haar-random unitaries within each degenerate eigenvalue block (blocks
/// taken across cycles, in ascending phase order). Column eigenvalues are
/// unchanged. Deterministic in (p, seed).
EigenbasisRealization randomized_eigenbasis(const ModePermutation& p, std::uint64_t seed);

/// ||P A - A diag(lambda)||_max — how well the realization diagonalizes pi.
double eigenbasis_residual(const ModePermutation& p, const EigenbasisRealization& e);

/// Haar-distributed n x n unitary: complex Gaussian matrix, then modified
/// Gram–Schmidt with positive-real diagonal normalization.
UnitaryMatrix haar_unitary(int n, Rng& rng);

}  // namespace mmi
