#pragma once

namespace mmi {

// Central numerical tolerances. Every comparison in the library and in the
// acceptance harness goes through these constants so that a tolerance change
// is a one-line diff.

/// Max elementwise deviation tolerated when validating a unitary matrix
/// (||U^dag U - 1||_max) and when comparing matrices entrywise.
inline constexpr double kMatrixTol = 1e-10;

/// Tolerance on |perm|^2 / |det|^2 oracle cross-checks (relative).
inline constexpr double kDeterminantTol = 1e-10;

/// Tolerance on the total probability of an output distribution
/// (sum over enumerated events vs 1).
inline constexpr double kSumTol = 1e-9;

/// Tolerance for state-vector comparisons (norms, overlaps, coefficients).
inline constexpr double kStateTol = 1e-10;

/// A transition probability at or below this threshold is reported as
/// numerically zero. Chosen far below any physical probability at desk
/// scale but far above accumulated rounding noise of the kernels.
inline constexpr double kZeroProbability = 1e-20;

/// Probability threshold used by the soundness checks: a law-flagged event
/// whose probability exceeds this is a soundness violation.
inline constexpr double kSoundnessTol = 1e-10;

}  // namespace mmi
