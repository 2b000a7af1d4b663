#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "minkit/basis.hpp"
#include "minkit/measurements.hpp"
#include "minkit/optimizer.hpp"
#include "minkit/states.hpp"
#include "minkit/tolerances.hpp"

namespace minkit {

enum class Method { ClosedForm, Optimized, Both };
std::string to_string(Method method);

/// A measure value plus how it was obtained: optimizer certificate when a
/// numeric search ran, cross-check residual when a closed form and the
/// optimizer were both evaluated, free-form diagnostics (branch taken,
/// arbitration values) keyed by name.
struct MeasureReport {
  std::string name;
  double value = 0.0;
  Method method = Method::ClosedForm;
  std::optional<OptimizerResult> certificate;
  std::optional<double> cross_check;  // |closed - optimized|
  double cross_check_tol = tol::kCrossCheck;
  std::map<std::string, double> diagnostics;
  std::optional<bool> equals_hellinger;  // affinity only

  bool cross_check_ok() const {
    return !cross_check.has_value() || *cross_check <= cross_check_tol;
  }
};

struct MeasureOptions {
  std::uint64_t seed = 20240901;
  long budget = 20000;
  bool cross_check = true;  // run the optimizer alongside m = 2 closed forms
};

/// tr(sqrt(rho) - sqrt(sigma))^2.
double hellinger_distance(const DensityMatrix& rho,
                          const DensityMatrix& sigma);

/// Hilbert-Schmidt MIN for 2 x n states, closed form from the correlation
/// block of rho itself, cross-checked against max ||rho - Pi(rho)||^2.
MeasureReport hs_min_2xn(const DensityMatrix& rho,
                         const MeasureOptions& opts = {});

/// Hellinger MIN: 1 - min over invariant measurements of
/// tr(sqrt(rho) Pi(sqrt(rho))). m = 2 dispatches to the closed form with an
/// optimizer cross-check; larger m evaluates the eigenprojector measurement
/// (nondegenerate marginal) or optimizes over the invariant family.
MeasureReport h_min(const DensityMatrix& rho, const MeasureOptions& opts = {});

/// Pure-state value 1 - sum_i s_i^2.
double h_min_pure(const SchmidtForm& s);

/// 1 - sum of the (m-1) smallest eigenvalues of Gamma Gamma^t, Gamma the
/// coefficient matrix of sqrt(rho). Upper bound on h_min.
double h_min_upper_bound(const DensityMatrix& rho);

/// 2 x n closed form. Nondegenerate marginal: 1 - tr(A Gamma Gamma^t A^t)
/// with A the two-row frame of the unique invariant measurement. Maximally
/// mixed marginal: both candidate closed forms (1 - mu_1 of the full
/// Gamma Gamma^t, and the trailing-block value 1 - g_11 - lambda_min) are
/// computed and the optimizer arbitrates; the certificate records both.
MeasureReport h_min_2xn_closed(const DensityMatrix& rho,
                               const MeasureOptions& opts = {});

/// Family closed forms.
double h_min_bell_diagonal(const std::array<double, 3>& c);
double h_min_isotropic(int n, double x);
double h_min_werner(int d, double x);

/// Weak-measurement MIN at strength x: direct maximization of
/// ||sqrt(rho) - Omega(sqrt(rho))||^2 over the invariant family, recorded
/// against the scaling (1 - sech x)^2 * h_min. m = 2 only.
MeasureReport weak_h_min(const DensityMatrix& rho, double x,
                         const MeasureOptions& opts = {});

/// ||rho_m - rho_n||^2 between sequential weak-measurement states, computed
/// literally from sequential_state.
double seq_distance(const DensityMatrix& rho, const TwoOutcomeSplit& split,
                    double x, int m_steps, int n_steps);

/// Same quantity via (tau^m - tau^n)^2 * sum_k I(rho, Pi_k tensor I); agrees
/// with seq_distance to 1e-10.
double seq_distance_formula(const DensityMatrix& rho,
                            const TwoOutcomeSplit& split, double x,
                            int m_steps, int n_steps);

/// Wigner-Yanase skew information -1/2 tr([sqrt(rho), K]^2).
double skew_information(const DensityMatrix& rho, const ComplexMatrix& K);

/// Hot-path variant with the square root precomputed.
double skew_information_of_sqrt(const ComplexMatrix& sqrt_rho,
                                const ComplexMatrix& K);

/// max over invariant measurements of sum_k I(rho, Pi_k tensor I), computed
/// by its own optimizer run on the commutator objective; equals h_min.
MeasureReport skew_min(const DensityMatrix& rho,
                       const MeasureOptions& opts = {});

/// 1 - min over invariant measurements of tr(sqrt(rho) sqrt(Pi(rho))); a
/// fresh PSD square root of the post-measured state per candidate. Flags
/// equality with h_min when sqrt(Pi(rho)) = Pi(sqrt(rho)) at the optimum.
MeasureReport affinity_min(const DensityMatrix& rho,
                           const MeasureOptions& opts = {});

}  // namespace minkit
