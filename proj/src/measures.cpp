#include "minkit/measures.hpp"

#include <cmath>
#include <string>

#include "minkit/errors.hpp"

namespace minkit {

namespace {

double clip_measure(double v) {
  return (v < 0.0 && v >= tol::kMeasureClip) ? 0.0 : v;
}

// Bloch vector of a qubit marginal: b_i = tr(rho_a sigma_i).
Eigen::Vector3d qubit_bloch(const ComplexMatrix& rho_a) {
  Eigen::Vector3d b;
  b[0] = 2.0 * rho_a(0, 1).real();
  b[1] = -2.0 * rho_a(0, 1).imag();
  b[2] = (rho_a(0, 0) - rho_a(1, 1)).real();
  return b;
}

OptimizerResult optimize_over_invariant_family(
    const DensityMatrix& rho, const MeasurementObjective& objective,
    OptimizeMode mode, const MeasureOptions& opts) {
  MarginalInvariant constraint = marginal_invariant_measurement(rho);
  OptimizeOptions oo;
  oo.budget = opts.budget;
  oo.seed = opts.seed;
  return optimize_measurement(objective, rho.m, mode, constraint, oo);
}

// The measure-defining objective ||sqrt(rho) - Pi(sqrt(rho))||^2, evaluated
// literally so the optimizer stays independent of the Gamma algebra used by
// the closed forms.
MeasurementObjective hellinger_objective(const ComplexMatrix& sqrt_rho) {
  return [&sqrt_rho](const ProjectiveMeasurement& P) {
    return hs_norm_sq(sqrt_rho - apply_local_measurement(sqrt_rho, P));
  };
}

RealVector symmetric_eigenvalues(const RealMatrix& G) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(G);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("symmetric eigensolve failed");
  }
  return solver.eigenvalues();
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::ClosedForm: return "closed_form";
    case Method::Optimized: return "optimized";
    case Method::Both: return "both";
  }
  return "unknown";
}

double hellinger_distance(const DensityMatrix& rho,
                          const DensityMatrix& sigma) {
  if (rho.matrix.rows() != sigma.matrix.rows()) {
    throw DimensionMismatch("hellinger_distance: dimensions differ");
  }
  return hs_norm_sq(psd_sqrt(rho.matrix) - psd_sqrt(sigma.matrix));
}

MeasureReport hs_min_2xn(const DensityMatrix& rho,
                         const MeasureOptions& opts) {
  if (rho.m != 2) {
    throw WrongDimension("hs_min_2xn: requires subsystem a of dimension 2");
  }
  BlochDecomposition D = bloch_decompose(rho.matrix, rho.m, rho.n);
  RealMatrix TTt = D.T() * D.T().transpose();
  Eigen::Vector3d b = qubit_bloch(rho.marginal_a());

  MeasureReport rep;
  rep.name = "hs_min";
  rep.method = Method::ClosedForm;
  if (b.norm() > tol::kDegeneracyGap) {
    Eigen::Vector3d xhat = b / b.norm();
    rep.value = clip_measure(TTt.trace() - xhat.dot(TTt * xhat));
    rep.diagnostics["marginal_degenerate"] = 0.0;
  } else {
    RealVector mu = symmetric_eigenvalues(TTt);
    rep.value = clip_measure(TTt.trace() - mu[0]);
    rep.diagnostics["marginal_degenerate"] = 1.0;
  }

  if (opts.cross_check) {
    const ComplexMatrix& R = rho.matrix;
    MeasurementObjective direct = [&R](const ProjectiveMeasurement& P) {
      return hs_norm_sq(R - apply_local_measurement(R, P));
    };
    OptimizerResult cert = optimize_over_invariant_family(
        rho, direct, OptimizeMode::Maximize, opts);
    rep.cross_check = std::abs(rep.value - clip_measure(cert.best_value));
    rep.certificate = std::move(cert);
    rep.method = Method::Both;
  }
  return rep;
}

double h_min_pure(const SchmidtForm& s) {
  validate_schmidt(s);
  double purity = 0.0;
  for (double c : s.coefficients) purity += c * c;
  return clip_measure(1.0 - purity);
}

double h_min_upper_bound(const DensityMatrix& rho) {
  BlochDecomposition G = gamma_of_sqrt(rho);
  RealVector mu = symmetric_eigenvalues(G.gamma * G.gamma.transpose());
  double tail = 0.0;
  for (int i = 0; i < rho.m - 1; ++i) tail += mu[i];
  return 1.0 - tail;
}

MeasureReport h_min_2xn_closed(const DensityMatrix& rho,
                               const MeasureOptions& opts) {
  if (rho.m != 2) {
    throw WrongDimension(
        "h_min_2xn_closed: requires subsystem a of dimension 2");
  }
  BlochDecomposition D = gamma_of_sqrt(rho);
  RealMatrix G = D.gamma * D.gamma.transpose();  // 4 x 4
  Eigen::Vector3d b = qubit_bloch(rho.marginal_a());

  MeasureReport rep;
  rep.name = "h_min";
  if (b.norm() > tol::kDegeneracyGap) {
    // Unique invariant measurement along the marginal's Bloch axis.
    Eigen::Vector3d xhat = b / b.norm();
    RealMatrix A(2, 4);
    A << 1, xhat[0], xhat[1], xhat[2], 1, -xhat[0], -xhat[1], -xhat[2];
    A /= std::sqrt(2.0);
    rep.value = clip_measure(1.0 - (A * G * A.transpose()).trace());
    rep.method = Method::ClosedForm;
    rep.diagnostics["marginal_degenerate"] = 0.0;
    return rep;
  }

  // Maximally mixed marginal: every measurement is invariant. Two candidate
  // closed forms; the brute-force optimizer arbitrates.
  const double literal = 1.0 - symmetric_eigenvalues(G)[0];
  const double g11 = G(0, 0);
  const RealMatrix Gvv = G.block(1, 1, 3, 3);
  const double restricted =
      1.0 - g11 - symmetric_eigenvalues(Gvv)[0];

  ComplexMatrix S = psd_sqrt(rho.matrix);
  OptimizerResult cert = optimize_over_invariant_family(
      rho, hellinger_objective(S), OptimizeMode::Maximize, opts);
  const double optimized = clip_measure(cert.best_value);

  const double err_literal = std::abs(literal - optimized);
  const double err_restricted = std::abs(restricted - optimized);
  rep.value = clip_measure(err_restricted <= err_literal ? restricted
                                                         : literal);
  rep.method = Method::Both;
  rep.cross_check = std::min(err_literal, err_restricted);
  rep.diagnostics["marginal_degenerate"] = 1.0;
  rep.diagnostics["x0_literal"] = literal;
  rep.diagnostics["x0_restricted"] = restricted;
  rep.diagnostics["x0_winner_restricted"] =
      err_restricted <= err_literal ? 1.0 : 0.0;
  rep.certificate = std::move(cert);
  return rep;
}

MeasureReport h_min(const DensityMatrix& rho, const MeasureOptions& opts) {
  if (rho.m == 2) {
    MeasureReport rep = h_min_2xn_closed(rho, opts);
    if (opts.cross_check && !rep.certificate) {
      ComplexMatrix S = psd_sqrt(rho.matrix);
      OptimizerResult cert = optimize_over_invariant_family(
          rho, hellinger_objective(S), OptimizeMode::Maximize, opts);
      rep.cross_check = std::abs(rep.value - clip_measure(cert.best_value));
      rep.certificate = std::move(cert);
      rep.method = Method::Both;
    }
    return rep;
  }
  ComplexMatrix S = psd_sqrt(rho.matrix);
  OptimizerResult cert = optimize_over_invariant_family(
      rho, hellinger_objective(S), OptimizeMode::Maximize, opts);
  MeasureReport rep;
  rep.name = "h_min";
  rep.value = clip_measure(cert.best_value);
  rep.method = Method::Optimized;
  rep.certificate = std::move(cert);
  return rep;
}

double h_min_bell_diagonal(const std::array<double, 3>& c) {
  std::array<double, 4> lambda = bell_diagonal_eigenvalues(c);
  std::array<double, 4> r;
  for (int i = 0; i < 4; ++i) {
    if (lambda[i] < tol::kPsdFloor) {
      throw NotPSD("h_min_bell_diagonal: c outside the physical tetrahedron");
    }
    r[i] = std::sqrt(std::max(lambda[i], 0.0));
  }
  const double delta = r[0] + r[1] + r[2] + r[3];
  const double d1 = r[0] - r[1] + r[2] - r[3];
  const double d2 = -r[0] + r[1] + r[2] - r[3];
  const double d3 = r[0] + r[1] - r[2] - r[3];
  const double min_d2 =
      std::min({d1 * d1, d2 * d2, d3 * d3});
  return clip_measure(1.0 - 0.25 * (delta * delta + min_d2));
}

double h_min_isotropic(int n, double x) {
  if (n < 2) throw InvalidDimension("h_min_isotropic: n must be >= 2");
  if (x < 0.0 || x > 1.0) {
    throw OutOfRange("h_min_isotropic: x must be in [0, 1]");
  }
  const double diff =
      std::sqrt((n - 1.0) * x) - std::sqrt((1.0 - x) / (n + 1.0));
  return clip_measure(diff * diff / n);
}

double h_min_werner(int d, double x) {
  if (d < 2) throw InvalidDimension("h_min_werner: d must be >= 2");
  if (x < -1.0 || x > 1.0) {
    throw OutOfRange("h_min_werner: x must be in [-1, 1]");
  }
  const double value =
      0.5 * ((d - x) / (d + 1.0) -
             std::sqrt((d - 1.0) / (d + 1.0) * (1.0 - x * x)));
  // Algebraically (d-x)^2 - (d^2-1)(1-x^2) = (dx-1)^2 >= 0, so the value
  // cannot go below round-off; anything past the clip window is surfaced.
  return clip_measure(value);
}

MeasureReport weak_h_min(const DensityMatrix& rho, double x,
                         const MeasureOptions& opts) {
  if (!(x > 0.0)) throw OutOfRange("weak_h_min: strength must be > 0");
  if (rho.m != 2) {
    throw WrongDimension("weak_h_min: requires subsystem a of dimension 2");
  }
  MeasureReport base = h_min(rho, opts);
  const double tau = 1.0 / std::cosh(x);
  const double scaled = (1.0 - tau) * (1.0 - tau) * base.value;

  ComplexMatrix S = psd_sqrt(rho.matrix);
  MeasurementObjective direct = [&S, x](const ProjectiveMeasurement& P) {
    WeakScheme W = make_weak_scheme(x, split_from_measurement(P));
    return hs_norm_sq(S - weak_apply(S, W));
  };
  OptimizerResult cert =
      optimize_over_invariant_family(rho, direct, OptimizeMode::Maximize, opts);

  MeasureReport rep;
  rep.name = "weak_h_min";
  rep.value = clip_measure(cert.best_value);
  rep.method = Method::Both;
  rep.cross_check = std::abs(rep.value - scaled);
  rep.diagnostics["scaled_from_h_min"] = scaled;
  rep.diagnostics["tau"] = tau;
  rep.certificate = std::move(cert);
  return rep;
}

double seq_distance(const DensityMatrix& rho, const TwoOutcomeSplit& split,
                    double x, int m_steps, int n_steps) {
  if (m_steps < 0 || n_steps < 0) {
    throw OutOfRange("seq_distance: step counts must be >= 0");
  }
  if (!(x > 0.0)) throw OutOfRange("seq_distance: strength must be > 0");
  const double tau = 1.0 / std::cosh(x);
  ComplexMatrix S = psd_sqrt(rho.matrix);
  ComplexMatrix rho_m = sequential_state(S, split, tau, m_steps);
  ComplexMatrix rho_n = sequential_state(S, split, tau, n_steps);
  return hs_norm_sq(rho_m - rho_n);
}

double seq_distance_formula(const DensityMatrix& rho,
                            const TwoOutcomeSplit& split, double x,
                            int m_steps, int n_steps) {
  if (m_steps < 0 || n_steps < 0) {
    throw OutOfRange("seq_distance_formula: step counts must be >= 0");
  }
  if (!(x > 0.0)) throw OutOfRange("seq_distance_formula: strength must be > 0");
  const double tau = 1.0 / std::cosh(x);
  ComplexMatrix S = psd_sqrt(rho.matrix);
  ComplexMatrix Ib = ComplexMatrix::Identity(rho.n, rho.n);
  const double skew = skew_information_of_sqrt(S, kron(split.first, Ib)) +
                      skew_information_of_sqrt(S, kron(split.second, Ib));
  const double w = std::pow(tau, m_steps) - std::pow(tau, n_steps);
  return w * w * skew;
}

double skew_information_of_sqrt(const ComplexMatrix& sqrt_rho,
                                const ComplexMatrix& K) {
  if (sqrt_rho.rows() != K.rows() || sqrt_rho.cols() != K.cols()) {
    throw DimensionMismatch("skew_information: dimensions differ");
  }
  ComplexMatrix C = sqrt_rho * K - K * sqrt_rho;
  // -1/2 tr([S, K]^2) = 1/2 ||C||^2 for anti-Hermitian C.
  return 0.5 * hs_norm_sq(C);
}

double skew_information(const DensityMatrix& rho, const ComplexMatrix& K) {
  if (!is_hermitian(K, tol::kStateHermiticity)) {
    throw NotHermitian("skew_information: observable not Hermitian");
  }
  return skew_information_of_sqrt(psd_sqrt(rho.matrix), K);
}

MeasureReport skew_min(const DensityMatrix& rho, const MeasureOptions& opts) {
  ComplexMatrix S = psd_sqrt(rho.matrix);
  ComplexMatrix Ib = ComplexMatrix::Identity(rho.n, rho.n);
  MeasurementObjective objective = [&](const ProjectiveMeasurement& P) {
    double total = 0.0;
    for (const ComplexMatrix& Pk : P.projectors) {
      total += skew_information_of_sqrt(S, kron(Pk, Ib));
    }
    return total;
  };
  OptimizerResult cert = optimize_over_invariant_family(
      rho, objective, OptimizeMode::Maximize, opts);
  MeasureReport rep;
  rep.name = "skew_min";
  rep.value = clip_measure(cert.best_value);
  rep.method = Method::Optimized;
  rep.certificate = std::move(cert);
  return rep;
}

MeasureReport affinity_min(const DensityMatrix& rho,
                           const MeasureOptions& opts) {
  ComplexMatrix S = psd_sqrt(rho.matrix);
  const ComplexMatrix& R = rho.matrix;
  MeasurementObjective objective = [&](const ProjectiveMeasurement& P) {
    ComplexMatrix measured = apply_local_measurement(R, P);
    return hs_inner(S, psd_sqrt(measured)).real();
  };
  OptimizerResult cert = optimize_over_invariant_family(
      rho, objective, OptimizeMode::Minimize, opts);

  MeasureReport rep;
  rep.name = "affinity_min";
  rep.value = clip_measure(1.0 - cert.best_value);
  rep.method = Method::Optimized;

  // At the optimum, check sqrt(Pi(rho)) = Pi(sqrt(rho)); when it holds the
  // affinity MIN coincides with the Hellinger MIN.
  ComplexMatrix measured =
      apply_local_measurement(R, cert.best_measurement);
  double gap = hs_norm(psd_sqrt(measured) -
                       apply_local_measurement(S, cert.best_measurement));
  rep.equals_hellinger = gap < 1e-8;
  rep.diagnostics["sqrt_pinch_gap"] = gap;
  rep.certificate = std::move(cert);
  return rep;
}

}  // namespace minkit
