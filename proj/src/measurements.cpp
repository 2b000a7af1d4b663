#include "minkit/measurements.hpp"

#include <cmath>
#include <string>

#include "minkit/errors.hpp"
#include "minkit/tolerances.hpp"

namespace minkit {

void validate_measurement(const ProjectiveMeasurement& P) {
  if (P.dim < 1 || P.projectors.size() != static_cast<std::size_t>(P.dim)) {
    throw DimensionMismatch("measurement: expected dim rank-1 projectors");
  }
  ComplexMatrix sum = ComplexMatrix::Zero(P.dim, P.dim);
  for (std::size_t k = 0; k < P.projectors.size(); ++k) {
    const ComplexMatrix& Pk = P.projectors[k];
    if (Pk.rows() != P.dim || Pk.cols() != P.dim) {
      throw DimensionMismatch("measurement: projector shape mismatch");
    }
    if (!is_hermitian(Pk, tol::kProjector)) {
      throw NotHermitian("measurement: projector not Hermitian");
    }
    if (hs_norm(Pk * Pk - Pk) > tol::kProjector) {
      throw Error("measurement: projector not idempotent");
    }
    if (std::abs(Pk.trace().real() - 1.0) > tol::kProjector) {
      throw Error("measurement: projector rank != 1");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (hs_norm(P.projectors[j] * Pk) > tol::kProjector) {
        throw Error("measurement: projectors not orthogonal");
      }
    }
    sum += Pk;
  }
  if (hs_norm(sum - ComplexMatrix::Identity(P.dim, P.dim)) > tol::kProjector) {
    throw Error("measurement: projectors do not sum to identity");
  }
}

ProjectiveMeasurement projective_from_unitary(const ComplexMatrix& U) {
  if (!is_unitary(U, tol::kUnitarity)) {
    throw NotUnitary("projective_from_unitary: input not unitary");
  }
  ProjectiveMeasurement P;
  P.dim = static_cast<int>(U.rows());
  P.projectors.reserve(P.dim);
  for (int k = 0; k < P.dim; ++k) {
    P.projectors.push_back(U.col(k) * U.col(k).adjoint());
  }
  return P;
}

ProjectiveMeasurement measurement_from_axis(double theta, double phi) {
  double nx = std::sin(theta) * std::cos(phi);
  double ny = std::sin(theta) * std::sin(phi);
  double nz = std::cos(theta);
  ComplexMatrix plus(2, 2);
  plus << Complex(0.5 * (1 + nz), 0), 0.5 * Complex(nx, -ny),
      0.5 * Complex(nx, ny), Complex(0.5 * (1 - nz), 0);
  ProjectiveMeasurement P;
  P.dim = 2;
  P.projectors.push_back(plus);
  P.projectors.push_back(ComplexMatrix::Identity(2, 2) - plus);
  return P;
}

ComplexMatrix apply_local_measurement(const ComplexMatrix& M,
                                      const ProjectiveMeasurement& P) {
  Eigen::Index dim = M.rows();
  if (M.cols() != dim || dim % P.dim != 0) {
    throw DimensionMismatch("apply_local_measurement: shape mismatch");
  }
  Eigen::Index nb = dim / P.dim;
  ComplexMatrix Ib = ComplexMatrix::Identity(nb, nb);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const ComplexMatrix& Pk : P.projectors) {
    ComplexMatrix lifted = kron(Pk, Ib);
    out += lifted * M * lifted;
  }
  return out;
}

namespace {

// Largest-magnitude component made real positive.
void fix_column_phase(ComplexMatrix& V, int col) {
  Eigen::Index imax = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    double mag = std::abs(V(i, col));
    if (mag > best) {
      best = mag;
      imax = i;
    }
  }
  Complex z = V(imax, col);
  if (std::abs(z) > 0) V.col(col) *= std::conj(z) / std::abs(z);
}

}  // namespace

MarginalInvariant marginal_invariant_measurement(const DensityMatrix& rho,
                                                 double tol) {
  Spectrum spec = herm_eig(rho.marginal_a());
  ComplexMatrix V = spec.eigenvectors;
  for (int k = 0; k < rho.m; ++k) fix_column_phase(V, k);

  MarginalInvariant out;
  out.marginal_basis = V;
  out.marginal_eigenvalues = spec.eigenvalues;
  out.groups.push_back({0});
  for (int k = 1; k < rho.m; ++k) {
    if (spec.eigenvalues[k] - spec.eigenvalues[k - 1] <= tol) {
      out.groups.back().push_back(k);
    } else {
      out.groups.push_back({k});
    }
  }
  out.degenerate = out.groups.size() != static_cast<std::size_t>(rho.m);
  if (!out.degenerate) {
    out.measurement = projective_from_unitary(V);
  }
  return out;
}

MarginalInvariant marginal_invariant_measurement(const DensityMatrix& rho) {
  return marginal_invariant_measurement(rho, tol::kDegeneracyGap);
}

TwoOutcomeSplit split_from_measurement(const ProjectiveMeasurement& P,
                                       int k) {
  if (k < 1 || k >= P.dim) {
    throw OutOfRange("split_from_measurement: k must be in [1, dim)");
  }
  ComplexMatrix first = ComplexMatrix::Zero(P.dim, P.dim);
  for (int i = 0; i < k; ++i) first += P.projectors[i];
  ComplexMatrix second = ComplexMatrix::Zero(P.dim, P.dim);
  for (int i = k; i < P.dim; ++i) second += P.projectors[i];
  return TwoOutcomeSplit{std::move(first), std::move(second)};
}

ComplexMatrix apply_split(const ComplexMatrix& M, const TwoOutcomeSplit& S) {
  Eigen::Index dim = M.rows();
  Eigen::Index ma = S.first.rows();
  if (M.cols() != dim || dim % ma != 0) {
    throw DimensionMismatch("apply_split: shape mismatch");
  }
  ComplexMatrix Ib = ComplexMatrix::Identity(dim / ma, dim / ma);
  ComplexMatrix p1 = kron(S.first, Ib);
  ComplexMatrix p2 = kron(S.second, Ib);
  return p1 * M * p1 + p2 * M * p2;
}

ComplexMatrix WeakScheme::omega_plus() const {
  return tau1 * split.first + tau2 * split.second;
}

ComplexMatrix WeakScheme::omega_minus() const {
  return tau2 * split.first + tau1 * split.second;
}

WeakScheme make_weak_scheme(double x, TwoOutcomeSplit split) {
  if (!(x > 0.0)) throw OutOfRange("weak scheme: strength must be > 0");
  WeakScheme W;
  W.strength = x;
  W.tau1 = std::sqrt((1.0 - std::tanh(x)) / 2.0);
  W.tau2 = std::sqrt((1.0 + std::tanh(x)) / 2.0);
  W.tau = 2.0 * W.tau1 * W.tau2;
  W.split = std::move(split);
  return W;
}

ComplexMatrix weak_apply(const ComplexMatrix& S, const WeakScheme& W) {
  Eigen::Index dim = S.rows();
  Eigen::Index ma = W.split.first.rows();
  if (S.cols() != dim || dim % ma != 0) {
    throw DimensionMismatch("weak_apply: shape mismatch");
  }
  ComplexMatrix Ib = ComplexMatrix::Identity(dim / ma, dim / ma);
  ComplexMatrix wp = kron(W.omega_plus(), Ib);
  ComplexMatrix wm = kron(W.omega_minus(), Ib);
  return wp * S * wp + wm * S * wm;
}

ComplexMatrix sequential_state(const ComplexMatrix& sqrt_rho,
                               const TwoOutcomeSplit& split, double tau,
                               int n_steps) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw OutOfRange("sequential_state: tau must be in (0, 1)");
  }
  if (n_steps < 0) throw OutOfRange("sequential_state: n_steps must be >= 0");
  if (n_steps == 0) return sqrt_rho;
  double w = std::pow(tau, n_steps);
  return w * sqrt_rho + (1.0 - w) * apply_split(sqrt_rho, split);
}

}  // namespace minkit
