#pragma once

#include <complex>

#include "mmi/matrix.hpp"

namespace mmi::kernels {

/// Hard cap on the matrix dimension accepted by the permanent kernels.
/// The subset-sum recurrence walks 2^N terms, so N = 20 (~1M subsets) keeps
/// a single evaluation comfortably below a second.
inline constexpr int kMaxPermanentDim = 20;

/// perm(M) of a square complex matrix via the inclusion–exclusion recurrence
/// over column subsets in Gray-code order (O(2^N * N)). perm of the empty
/// matrix is 1. Dispatches to the fastest backend available at runtime; see
/// active_backend(). Throws std::invalid_argument above kMaxPermanentDim.
std::complex<double> permanent(const ComplexMatrix& m);

/// perm(|M|^2) with |.|^2 applied entrywise — the distinguishable-particle
/// transition sum. Same recurrence in real arithmetic, same dispatch.
double permanent_of_squared_moduli(const ComplexMatrix& m);

/// det(M) via LU decomposition with partial pivoting (scalar only; the
/// O(N^3) cost never dominates). det of the empty matrix is 1.
std::complex<double> determinant(const ComplexMatrix& m);

/// Portable reference implementations. These are the ground truth the SIMD
/// variants are equivalence-tested against.
std::complex<double> permanent_scalar(const ComplexMatrix& m);
double permanent_of_squared_moduli_scalar(const ComplexMatrix& m);

/// AVX2+FMA variants (interleaved-complex lanes). Callable only when
/// avx2_available(); they throw std::runtime_error otherwise.
std::complex<double> permanent_avx2(const ComplexMatrix& m);
double permanent_of_squared_moduli_avx2(const ComplexMatrix& m);

/// True when the running CPU supports the AVX2+FMA code path.
bool avx2_available();

/// Backend the dispatching entry points use: "avx2" or "scalar".
/// Overridable through the environment variable MMI_KERNEL=auto|scalar|avx2
/// (read once, at first use).
const char* active_backend();

}  // namespace mmi::kernels
