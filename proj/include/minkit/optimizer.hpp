#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "minkit/measurements.hpp"

namespace minkit {

/// Parameters identifying a point on the measurement manifold. For m = 2
/// these are the spherical angles (theta, phi) of the first projector's
/// Bloch axis; otherwise generator coefficients of a unitary exponential
/// (per degenerate eigenspace block when a constraint is active).
struct MeasurementParams {
  std::vector<double> values;
};

struct OptimizerResult {
  double best_value = 0.0;
  MeasurementParams best_params;
  ProjectiveMeasurement best_measurement;
  long evaluations = 0;
  int restarts = 0;
  bool converged = false;  // best two restarts within kRestartAgreement
};

enum class OptimizeMode { Minimize, Maximize };

struct OptimizeOptions {
  long budget = 20000;
  std::uint64_t seed = 20240901;
  int random_restarts = 20;  // restart count for generator-parameterized runs
};

using MeasurementObjective =
    std::function<double(const ProjectiveMeasurement&)>;

/// Derivative-free minimization (or maximization) of an objective over the
/// von Neumann measurement manifold on subsystem a of dimension m.
///
/// Unconstrained m = 2: 32x64 grid over (theta, phi) refined by Nelder-Mead
/// from the best 5 grid points. Otherwise seeded random restarts of
/// Nelder-Mead over generator coefficients. With a constraint whose
/// marginal is nondegenerate the unique invariant measurement is evaluated
/// directly; with degeneracy the search runs only inside the degenerate
/// eigenspaces. Deterministic for fixed seed. A spent budget returns
/// best-so-far with converged = false.
OptimizerResult optimize_measurement(
    const MeasurementObjective& objective, int m, OptimizeMode mode,
    const std::optional<MarginalInvariant>& constraint = {},
    const OptimizeOptions& opts = {});

}  // namespace minkit
