#include "minkit/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "minkit/basis.hpp"
#include "minkit/errors.hpp"
#include "minkit/tolerances.hpp"

namespace minkit {

namespace {

constexpr int kGridTheta = 32;
constexpr int kGridPhi = 64;
constexpr int kGridRefinements = 5;

ComplexMatrix exp_i_hermitian(const ComplexMatrix& H) {
  Spectrum spec = herm_eig(H);
  ComplexVector phases(spec.eigenvalues.size());
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    phases[i] = std::exp(Complex(0, spec.eigenvalues[i]));
  }
  return spec.eigenvectors * phases.asDiagonal() *
         spec.eigenvectors.adjoint();
}

ComplexMatrix unitary_from_coeffs(const std::vector<double>& a,
                                  const OperatorBasis& generators) {
  ComplexMatrix H = ComplexMatrix::Zero(generators.dim, generators.dim);
  for (std::size_t k = 0; k < a.size(); ++k) {
    H += a[k] * generators.elements[k];
  }
  return exp_i_hermitian(H);
}

// Maps parameter vectors to measurements for the active search space.
struct Parameterization {
  enum class Kind { Axis, Generators, Blocks } kind = Kind::Axis;
  int m = 2;
  std::vector<OperatorBasis> block_generators;  // Generators: one entry
  std::vector<std::vector<int>> groups;         // Blocks only
  ComplexMatrix frame;                          // Blocks only: marginal basis

  int param_count() const {
    switch (kind) {
      case Kind::Axis: return 2;
      case Kind::Generators: return m * m;
      case Kind::Blocks: {
        int count = 0;
        for (const auto& g : groups)
          if (g.size() > 1) count += int(g.size() * g.size());
        return count;
      }
    }
    return 0;
  }

  ProjectiveMeasurement realize(const std::vector<double>& p) const {
    switch (kind) {
      case Kind::Axis:
        return measurement_from_axis(p[0], p[1]);
      case Kind::Generators:
        return projective_from_unitary(
            unitary_from_coeffs(p, block_generators[0]));
      case Kind::Blocks: {
        ComplexMatrix U = frame;
        std::size_t offset = 0;
        std::size_t gen_idx = 0;
        for (const auto& group : groups) {
          if (group.size() < 2) continue;
          const OperatorBasis& gens = block_generators[gen_idx++];
          std::vector<double> coeffs(
              p.begin() + offset, p.begin() + offset + gens.elements.size());
          offset += gens.elements.size();
          ComplexMatrix rotated(U.rows(), group.size());
          for (std::size_t j = 0; j < group.size(); ++j)
            rotated.col(j) = frame.col(group[j]);
          rotated = rotated * unitary_from_coeffs(coeffs, gens);
          for (std::size_t j = 0; j < group.size(); ++j)
            U.col(group[j]) = rotated.col(j);
        }
        return projective_from_unitary(U);
      }
    }
    throw Error("unreachable parameterization kind");
  }
};

// Counts objective calls against the budget (nullopt once spent) and keeps
// the running best over every evaluation, so best_value is never above an
// evaluated point even when a refinement aborts mid-flight.
struct BudgetedObjective {
  const MeasurementObjective& fn;
  const Parameterization& space;
  double sign;  // +1 minimize, -1 maximize (internally always minimizes)
  long budget;
  long used = 0;
  bool exhausted = false;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> best_point = {};

  std::optional<double> operator()(const std::vector<double>& p) {
    if (used >= budget) {
      exhausted = true;
      return std::nullopt;
    }
    ++used;
    double v = sign * fn(space.realize(p));
    if (v < best_value) {
      best_value = v;
      best_point = p;
    }
    return v;
  }
};

struct NmResult {
  double value = std::numeric_limits<double>::infinity();
  bool completed = false;
};

// Standard Nelder-Mead with outside/inside contraction and shrink.
NmResult nelder_mead(BudgetedObjective& f, const std::vector<double>& start,
                     double step, long max_evals) {
  const std::size_t dim = start.size();
  const double alpha = 1.0, gamma = 2.0, beta = 0.5, sigma = 0.5;
  const long used0 = f.used;

  auto eval = [&](const std::vector<double>& p) -> std::optional<double> {
    if (f.used - used0 >= max_evals) return std::nullopt;
    return f(p);
  };

  std::vector<std::vector<double>> pts;
  std::vector<double> vals;
  pts.push_back(start);
  auto v0 = eval(start);
  if (!v0) return {};
  vals.push_back(*v0);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> p = start;
    p[i] += step;
    auto v = eval(p);
    if (!v) return {*std::min_element(vals.begin(), vals.end()), false};
    pts.push_back(std::move(p));
    vals.push_back(*v);
  }

  std::vector<std::size_t> order(dim + 1);
  const int max_iters = 200 * static_cast<int>(dim) + 200;
  for (int iter = 0; iter < max_iters; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(
        order.begin(), order.end(),
        [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order[0], worst = order[dim];
    const std::size_t second_worst = order[dim - 1];

    double diameter = 0.0;
    for (std::size_t i = 1; i <= dim; ++i)
      for (std::size_t c = 0; c < dim; ++c)
        diameter =
            std::max(diameter, std::abs(pts[order[i]][c] - pts[best][c]));
    if (vals[worst] - vals[best] < 1e-13 * (1.0 + std::abs(vals[best])) &&
        diameter < 1e-9) {
      return {vals[best], true};
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t c = 0; c < dim; ++c) centroid[c] += pts[i][c];
    }
    for (double& c : centroid) c /= double(dim);

    auto blend = [&](double t) {
      std::vector<double> p(dim);
      for (std::size_t c = 0; c < dim; ++c)
        p[c] = centroid[c] + t * (pts[worst][c] - centroid[c]);
      return p;
    };

    std::vector<double> reflected = blend(-alpha);
    auto fr = eval(reflected);
    if (!fr) break;

    if (*fr < vals[order[0]]) {
      std::vector<double> expanded = blend(-gamma);
      auto fe = eval(expanded);
      if (!fe) break;
      if (*fe < *fr) {
        pts[worst] = std::move(expanded);
        vals[worst] = *fe;
      } else {
        pts[worst] = std::move(reflected);
        vals[worst] = *fr;
      }
      continue;
    }
    if (*fr < vals[second_worst]) {
      pts[worst] = std::move(reflected);
      vals[worst] = *fr;
      continue;
    }
    const bool outside = *fr < vals[worst];
    std::vector<double> contracted = blend(outside ? -beta : beta);
    auto fc = eval(contracted);
    if (!fc) break;
    if (*fc < std::min(*fr, vals[worst])) {
      pts[worst] = std::move(contracted);
      vals[worst] = *fc;
      continue;
    }
    bool aborted = false;
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t c = 0; c < dim; ++c)
        pts[i][c] = pts[best][c] + sigma * (pts[i][c] - pts[best][c]);
      auto fv = eval(pts[i]);
      if (!fv) {
        aborted = true;
        break;
      }
      vals[i] = *fv;
    }
    if (aborted) break;
  }
  return {*std::min_element(vals.begin(), vals.end()), false};
}

}  // namespace

OptimizerResult optimize_measurement(
    const MeasurementObjective& objective, int m, OptimizeMode mode,
    const std::optional<MarginalInvariant>& constraint,
    const OptimizeOptions& opts) {
  if (m < 2) throw InvalidDimension("optimize_measurement: m must be >= 2");
  if (opts.budget < 1) throw OutOfRange("optimize_measurement: budget < 1");

  const double sign = (mode == OptimizeMode::Minimize) ? 1.0 : -1.0;

  // Unique invariant measurement: nothing to search.
  if (constraint && !constraint->degenerate) {
    OptimizerResult res;
    res.best_measurement = *constraint->measurement;
    res.best_value = objective(res.best_measurement);
    res.evaluations = 1;
    res.restarts = 1;
    res.converged = true;
    return res;
  }

  Parameterization space;
  space.m = m;
  const bool fully_degenerate =
      !constraint || (constraint->groups.size() == 1 &&
                      constraint->groups[0].size() == std::size_t(m));
  if (m == 2) {
    space.kind = Parameterization::Kind::Axis;
  } else if (fully_degenerate) {
    space.kind = Parameterization::Kind::Generators;
    space.block_generators.push_back(gell_mann_basis(m));
  } else {
    space.kind = Parameterization::Kind::Blocks;
    space.groups = constraint->groups;
    space.frame = constraint->marginal_basis;
    for (const auto& g : space.groups) {
      if (g.size() > 1)
        space.block_generators.push_back(gell_mann_basis(int(g.size())));
    }
  }

  BudgetedObjective f{
      .fn = objective, .space = space, .sign = sign, .budget = opts.budget};
  std::vector<double> restart_values;

  if (space.kind == Parameterization::Kind::Axis) {
    struct GridPoint {
      double value;
      std::vector<double> p;
    };
    std::vector<GridPoint> grid;
    grid.reserve(std::size_t{kGridTheta} * kGridPhi);
    for (int i = 0; i < kGridTheta && !f.exhausted; ++i) {
      double theta = std::numbers::pi * (i + 0.5) / kGridTheta;
      for (int j = 0; j < kGridPhi; ++j) {
        double phi = 2.0 * std::numbers::pi * j / kGridPhi;
        std::vector<double> p{theta, phi};
        auto v = f(p);
        if (!v) break;
        grid.push_back({*v, std::move(p)});
      }
    }
    std::stable_sort(grid.begin(), grid.end(),
                     [](const GridPoint& a, const GridPoint& b) {
                       return a.value < b.value;
                     });
    const int refinements = std::min<int>(kGridRefinements, int(grid.size()));
    const long per_restart =
        std::max<long>(0, (opts.budget - f.used) / kGridRefinements);
    if (per_restart < 3) {
      // Not enough budget left to build a simplex; the plan is cut short.
      f.exhausted = true;
    }
    for (int r = 0; r < refinements && !f.exhausted; ++r) {
      NmResult nm = nelder_mead(
          f, grid[r].p, std::numbers::pi / (2 * kGridTheta), per_restart);
      restart_values.push_back(std::min(nm.value, grid[r].value));
    }
  } else {
    std::mt19937_64 seeder(opts.seed);
    std::vector<std::uint64_t> restart_seeds(opts.random_restarts);
    for (auto& s : restart_seeds) s = seeder();
    const int dim = space.param_count();
    const long per_restart =
        std::max<long>(1, opts.budget / std::max(1, opts.random_restarts));
    for (int r = 0; r < opts.random_restarts && !f.exhausted; ++r) {
      GaussianStream g(restart_seeds[r]);
      std::vector<double> start(dim);
      for (double& v : start) v = 0.8 * g.next();
      NmResult nm = nelder_mead(f, start, 0.3, per_restart);
      if (std::isfinite(nm.value)) restart_values.push_back(nm.value);
    }
  }

  if (f.best_point.empty()) {
    throw OutOfRange("optimize_measurement: budget too small to evaluate");
  }
  OptimizerResult res;
  res.best_value = sign * f.best_value;
  res.best_params.values = f.best_point;
  res.best_measurement = space.realize(f.best_point);
  res.evaluations = f.used;
  res.restarts = int(restart_values.size());
  std::sort(restart_values.begin(), restart_values.end());
  const bool agree =
      restart_values.size() >= 2
          ? (restart_values[1] - restart_values[0] <= tol::kRestartAgreement)
          : !restart_values.empty();
  res.converged = agree && !f.exhausted;
  return res;
}

}  // namespace minkit
