#pragma once

#include <optional>
#include <vector>

#include "minkit/linalg.hpp"
#include "minkit/states.hpp"

namespace minkit {

/// Ordered complete set of m rank-1 orthogonal projectors on subsystem a.
struct ProjectiveMeasurement {
  int dim = 0;
  std::vector<ComplexMatrix> projectors;
};

/// Structural invariants: Hermitian idempotent rank-1 projectors, pairwise
/// orthogonal, summing to identity. Throws on violation.
void validate_measurement(const ProjectiveMeasurement& P);

/// P_k = U |k><k| U^dag from the columns of a unitary.
ProjectiveMeasurement projective_from_unitary(const ComplexMatrix& U);

/// Qubit measurement along the Bloch axis (theta, phi):
/// P_1 = (I + n.sigma)/2 first, then its complement.
ProjectiveMeasurement measurement_from_axis(double theta, double phi);

/// sum_k (P_k tensor I) M (P_k tensor I) for M on the m*n composite space.
ComplexMatrix apply_local_measurement(const ComplexMatrix& M,
                                      const ProjectiveMeasurement& P);

/// Result of intersecting the measurement manifold with the invariance
/// condition Pi(rho^a) = rho^a. Nondegenerate marginal: the unique
/// measurement (phase-fixed eigenprojectors). Any eigenvalue gap at or
/// below tol: degenerate == true and callers optimize over the family;
/// `groups` lists marginal eigenvector indices per (near-)degenerate
/// eigenspace, `marginal_basis` the phase-fixed eigenvectors.
struct MarginalInvariant {
  bool degenerate = false;
  std::optional<ProjectiveMeasurement> measurement;
  ComplexMatrix marginal_basis;
  RealVector marginal_eigenvalues;
  std::vector<std::vector<int>> groups;
};

MarginalInvariant marginal_invariant_measurement(const DensityMatrix& rho,
                                                 double tol);
MarginalInvariant marginal_invariant_measurement(const DensityMatrix& rho);

/// Two orthogonal projectors with P1 + P2 = I, the coarse split a weak
/// scheme interpolates toward.
struct TwoOutcomeSplit {
  ComplexMatrix first;
  ComplexMatrix second;
};

/// first = sum of projectors [0, k), second = the rest. Default k = 1.
TwoOutcomeSplit split_from_measurement(const ProjectiveMeasurement& P,
                                       int k = 1);

/// (P1 tensor I) M (P1 tensor I) + (P2 tensor I) M (P2 tensor I).
ComplexMatrix apply_split(const ComplexMatrix& M, const TwoOutcomeSplit& S);

/// Two-outcome weak measurement of strength x > 0:
/// W_{+x} = t1 P1 + t2 P2, W_{-x} = t2 P1 + t1 P2 with
/// t1 = sqrt((1 - tanh x)/2), t2 = sqrt((1 + tanh x)/2) and interpolation
/// weight tau = 2 t1 t2 = sech x.
struct WeakScheme {
  double strength = 0;
  double tau1 = 0;
  double tau2 = 0;
  double tau = 0;
  TwoOutcomeSplit split;

  ComplexMatrix omega_plus() const;
  ComplexMatrix omega_minus() const;
};

WeakScheme make_weak_scheme(double x, TwoOutcomeSplit split);

/// sum_{k = +-x} (W_k tensor I) S (W_k tensor I); equals
/// tau S + (1 - tau) apply_split(S).
ComplexMatrix weak_apply(const ComplexMatrix& S, const WeakScheme& W);

/// n-fold weak measurement of sqrt(rho):
/// tau^n sqrt(rho) + (1 - tau^n) apply_split(sqrt(rho)). n = 0 returns
/// sqrt(rho) exactly. Requires 0 < tau < 1, n >= 0.
ComplexMatrix sequential_state(const ComplexMatrix& sqrt_rho,
                               const TwoOutcomeSplit& split, double tau,
                               int n_steps);

}  // namespace minkit
