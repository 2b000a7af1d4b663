#pragma once

// Every numerical tolerance used by the library, in one place. All values
// are absolute and calibrated against unit-trace-scale matrices (Hilbert-
// Schmidt norms of order 1).

namespace minkit::tol {

// Hermiticity guard for eigendecomposition inputs, relative to max(1, ||H||).
inline constexpr double kHermiticity = 1e-9;

// Hermiticity / unit-trace requirements on density matrices.
inline constexpr double kStateHermiticity = 1e-10;
inline constexpr double kUnitTrace = 1e-10;

// Eigenvalues of a nominally PSD matrix may dip this far below zero from
// round-off; anything in [kPsdFloor, 0) is clipped to 0 before square roots.
inline constexpr double kPsdFloor = -1e-10;

// Unitarity check: ||U^dag U - I||.
inline constexpr double kUnitarity = 1e-10;

// Schmidt coefficients must sum to 1 within this.
inline constexpr double kSchmidtSum = 1e-12;

// Eigendecomposition reconstruction ||V diag(l) V^dag - H||.
inline constexpr double kEigReconstruct = 1e-9;

// Bloch decomposition: reconstruction bound, and the hard error threshold on
// imaginary residue in coefficients (catches non-Hermitian bugs upstream).
inline constexpr double kBlochReconstruct = 1e-10;
inline constexpr double kBlochImagResidue = 1e-9;

// Projective-measurement structural checks (idempotence, orthogonality,
// completeness).
inline constexpr double kProjector = 1e-10;

// Marginal eigenvalue gaps at or below this count as degenerate; the
// invariant-measurement family is then a manifold and callers optimize.
inline constexpr double kDegeneracyGap = 1e-8;

// Measure values in [kMeasureClip, 0) report as 0.
inline constexpr double kMeasureClip = -1e-10;

// Agreement required between a closed form and the brute-force optimizer.
inline constexpr double kCrossCheck = 1e-6;

// Optimizer convergence evidence: best two restarts within this.
inline constexpr double kRestartAgreement = 1e-8;

}  // namespace minkit::tol
