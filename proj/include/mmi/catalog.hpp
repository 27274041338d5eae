#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmi/eigenbasis.hpp"
#include "mmi/matrix.hpp"
#include "mmi/permutation.hpp"

namespace mmi {

// ---------------------------------------------------------------------------
// Named interferometers, each with the mode permutation it diagonalizes.
// ---------------------------------------------------------------------------

/// Discrete Fourier multiport: U_{j,k} = (1/sqrt(n)) e^{i 2 pi (j-1)(k-1)/n}
/// (1-based mode labels).
UnitaryMatrix fourier_unitary(int n);

/// Cyclic shift by chi modes, pi(j) = 1 + ((j + chi - 1) mod n) in 1-based
/// labels. Requires chi | n; yields chi cycles of length m = n/chi.
ModePermutation fourier_cyclic_shift(int n, int chi);

/// d-fold tensor power of (1/sqrt 2)[[1,1],[1,-1]], most significant factor
/// first; n = 2^d.
UnitaryMatrix sylvester_unitary(int d);

/// d-fold tensor power of (1/sqrt 2)[[1,i],[i,1]], most significant factor
/// first; n = 2^d.
UnitaryMatrix hypercube_unitary(int d);

/// Rademacher function x(j, p) = (-1)^floor(p(j-1)/n), 1-based j. Valid p
/// are the even divisors of n (for n = 2^d these are 2, 4, ..., n).
int rademacher(int j, int p, int n);

/// Walsh function A(j, p_vec) = prod_k x(j, p_k); distinct p entries.
int walsh(int j, const std::vector<int>& ps, int n);

/// Hypercube reflection pi(j) = j + sum_k x(j, p_k) n/p_k, an involution
/// without fixed points for nonempty distinct p_vec.
ModePermutation hypercube_permutation(const std::vector<int>& ps, int n);

/// Local phases relating the hypercube to the Sylvester multiport:
/// theta(j) = (pi/4) sum_{l=1..d} [1 - x(j, 2^l)].
PhaseVector hypercube_local_phases(int d);

/// exp(i Jx pi/2) for the spin-(n-1)/2 angular momentum x-component, computed
/// by eigendecomposition of the real symmetric tridiagonal Jx matrix.
UnitaryMatrix jx_unitary(int n);

/// The mirror pi(j) = n + 1 - j; one fixed point for odd n.
ModePermutation mirror_permutation(int n);

/// Local phases of the mirror relation for exp(i Jx pi/2): theta(j) = pi j/2.
PhaseVector jx_local_phases(int n);

// ---------------------------------------------------------------------------
// The general family U = Theta A Sigma and its verification.
// ---------------------------------------------------------------------------

/// U = diag(e^{i theta}) * A * diag(e^{i sigma}).
UnitaryMatrix compose(const PhaseVector& theta, const EigenbasisRealization& a,
                      const PhaseVector& sigma);

/// Certificate that U obeys the symmetric phase relation for permutation p:
/// U_{pi(j),k} = e^{i[theta(pi(j)) - theta(j)]} U_{j,k} lambda_k, with the
/// lambda_k exact roots of unity.
struct SymmetricPhaseWitness {
  ModePermutation permutation;
  std::vector<EigenPhase> eigenphases;  // lambda_k, one per column
  PhaseVector local_phase;              // theta(j); 0 on each cycle's smallest mode
  double residual;                      // max entrywise deviation of the relation
};

/// Solves for (theta, lambda) such that the symmetric phase relation holds;
/// empty when no consistent assignment exists within kMatrixTol.
///
/// Gauge conventions (the relation determines the phases only up to these):
/// theta is pinned to 0 at the smallest mode of every cycle, and within each
/// connected block of the mode/column support graph the eigenvalue of the
/// lowest-index column is the smallest-phase candidate among the block's
/// residual twists. The catalog matrices all land on their published phase
/// assignments under this convention.
std::optional<SymmetricPhaseWitness> verify_symmetric_phase_relation(
    const UnitaryMatrix& u, const ModePermutation& p);

// ---------------------------------------------------------------------------
// CLI-facing catalog addressing.
// ---------------------------------------------------------------------------

/// A catalog entry resolved from a spec string such as "fourier:n=12",
/// "sylvester:d=3", "hypercube:d=3", "jx:n=11", or
/// "eigenbasis:perm=(1 2 3)(4 5 6),seed=7,theta=0,sigma=0". The natural
/// permutation is the one the unitary is known to diagonalize (the cyclic
/// shift with the smallest chi for fourier, the reflection for hypercube,
/// the mirror for jx, the supplied permutation for eigenbasis; none for
/// sylvester, whose reflections depend on the chosen p_vec).
struct CatalogEntry {
  std::string name;
  UnitaryMatrix unitary;
  std::optional<ModePermutation> natural_permutation;
};

CatalogEntry parse_unitary_spec(const std::string& spec);

}  // namespace mmi
