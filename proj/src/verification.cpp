#include "minkit/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "minkit/basis.hpp"
#include "minkit/measures.hpp"
#include "minkit/state_io.hpp"

namespace minkit {

namespace {

double uniform01(std::mt19937_64& eng) {
  return (double(eng() >> 11) + 0.5) * 0x1.0p-53;
}

SchmidtForm random_schmidt(int da, int db, std::mt19937_64& eng) {
  SchmidtForm s;
  s.dim_a = da;
  s.dim_b = db;
  int k = std::min(da, db);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    double e = -std::log(uniform01(eng));
    s.coefficients.push_back(e);
    total += e;
  }
  for (double& c : s.coefficients) c /= total;
  return s;
}

// Random 2 x n state with its a-marginal forced to I/2: zero the x-block of
// the coefficient matrix and mix toward maximal mixedness until PSD.
DensityMatrix random_x0_state(int n, std::uint64_t seed) {
  DensityMatrix rho = random_density(2, n, 2 * n, seed);
  BlochDecomposition D = bloch_decompose(rho.matrix, 2, n);
  D.gamma.block(1, 0, 3, 1).setZero();
  ComplexMatrix M = bloch_reconstruct(D);
  M = (M + M.adjoint()) / 2.0;
  Spectrum spec = herm_eig(M);
  double lo = spec.eigenvalues.minCoeff();
  double mix = 1.0 / (2.0 * n);
  if (lo < 1e-9) {
    double alpha = (mix - 1e-9) / (mix - lo);
    M = alpha * M +
        (1.0 - alpha) * ComplexMatrix::Identity(2 * n, 2 * n) * mix;
  }
  return make_density(std::move(M), 2, n);
}

DensityMatrix random_product(int m, int n, std::uint64_t seed) {
  DensityMatrix a = random_density(1, m, m, seed);
  DensityMatrix b = random_density(1, n, n, seed + 101);
  return make_density(kron(a.matrix, b.matrix), m, n);
}

struct Battery {
  const VerifyOptions& opts;
  VerifyReport report;

  void add(const std::string& name, double residual, double tolerance,
           const std::string& note = "") {
    report.checks.push_back(
        {name, residual, tolerance, residual <= tolerance, note});
  }
  void add_flag(const std::string& name, bool ok, const std::string& note) {
    report.checks.push_back({name, ok ? 0.0 : 1.0, 0.5, ok, note});
  }

  MeasureOptions mopts(bool cross = true) const {
    MeasureOptions mo;
    mo.seed = opts.seed * 7919 + 17;
    mo.budget = opts.budget;
    mo.cross_check = cross;
    return mo;
  }
};

void check_pure_state_formula(Battery& b) {
  std::mt19937_64 eng(b.opts.seed);
  const int dims[3][2] = {{2, 2}, {2, 3}, {3, 3}};
  double worst = 0.0;
  for (int i = 0; i < b.opts.battery_size; ++i) {
    const auto& d = dims[i % 3];
    SchmidtForm s = random_schmidt(d[0], d[1], eng);
    DensityMatrix rho =
        pure_from_schmidt(s, random_unitary(d[0], eng()),
                          random_unitary(d[1], eng()));
    double numeric = h_min(rho, b.mopts()).value;
    worst = std::max(worst, std::abs(numeric - h_min_pure(s)));
  }
  b.add("pure_state_formula", worst, 1e-6);
}

void check_bell_maximum(Battery& b) {
  SchmidtForm s{{0.5, 0.5}, 2, 2};
  DensityMatrix bell = pure_from_schmidt(s);
  MeasureReport rep = h_min(bell, b.mopts());
  b.add("bell_maximum_closed", std::abs(rep.value - 0.5), 1e-8);
  double opt = rep.certificate ? rep.certificate->best_value : rep.value;
  b.add("bell_maximum_optimizer", std::abs(opt - 0.5), 1e-6);
}

void check_product_faithfulness(Battery& b) {
  double worst = 0.0;
  for (int i = 0; i < b.opts.battery_size; ++i) {
    int n = (i % 2 == 0) ? 2 : 3;
    DensityMatrix rho = random_product(2, n, b.opts.seed + 211 * i);
    MeasureOptions mo = b.mopts(false);
    worst = std::max({worst, h_min(rho, mo).value, hs_min_2xn(rho, mo).value,
                      skew_min(rho, mo).value, affinity_min(rho, mo).value});
  }
  b.add("product_faithfulness", worst, 1e-8);
}

void check_local_unitary_invariance(Battery& b) {
  std::mt19937_64 eng(b.opts.seed + 1);
  double worst = 0.0;
  int states = std::max(1, b.opts.battery_size / 4);
  for (int i = 0; i < states; ++i) {
    int n = (i % 2 == 0) ? 2 : 3;
    DensityMatrix rho = random_density(2, n, 2 * n - i % 2, eng());
    double base = h_min(rho, b.mopts(false)).value;
    for (int j = 0; j < 20; ++j) {
      ComplexMatrix U = random_unitary(2, eng());
      ComplexMatrix V = random_unitary(n, eng());
      ComplexMatrix W = kron(U, V);
      DensityMatrix rotated =
          make_density(W * rho.matrix * W.adjoint(), 2, n);
      worst = std::max(
          worst, std::abs(h_min(rotated, b.mopts(false)).value - base));
    }
  }
  b.add("local_unitary_invariance", worst, 1e-6);
}

void check_local_ancilla_invariance(Battery& b) {
  std::mt19937_64 eng(b.opts.seed + 2);
  double worst = 0.0;
  for (int i = 0; i < std::max(1, b.opts.battery_size / 2); ++i) {
    DensityMatrix rho = random_density(2, 2, 3, eng());
    double base = h_min(rho, b.mopts(false)).value;
    for (int k : {2, 3}) {
      DensityMatrix anc = random_density(1, k, k, eng());
      DensityMatrix ext = attach_ancilla(rho, anc.matrix);
      worst = std::max(
          worst, std::abs(h_min(ext, b.mopts(false)).value - base));
    }
  }
  b.add("local_ancilla_invariance", worst, 1e-6);
}

void check_spectral_upper_bound(Battery& b) {
  std::mt19937_64 eng(b.opts.seed + 3);
  double worst = 0.0;
  for (int i = 0; i < b.opts.battery_size; ++i) {
    int n = (i % 2 == 0) ? 2 : 3;
    int rank = 1 + int(eng() % (2 * n));
    DensityMatrix rho = random_density(2, n, rank, eng());
    double gap = h_min(rho, b.mopts()).value - h_min_upper_bound(rho);
    worst = std::max(worst, gap);
  }
  b.add("spectral_upper_bound", std::max(0.0, worst), 1e-8);
}

void check_weak_scaling_law(Battery& b) {
  std::mt19937_64 eng(b.opts.seed + 4);
  double worst = 0.0;
  for (int i = 0; i < std::max(1, b.opts.battery_size / 4); ++i) {
    int n = (i % 2 == 0) ? 2 : 3;
    DensityMatrix rho = random_density(2, n, 2, eng());
    for (double x : {0.5, 1.0, 2.0, 5.0}) {
      MeasureReport rep = weak_h_min(rho, x, b.mopts(false));
      worst = std::max(worst, rep.cross_check.value_or(0.0));
    }
  }
  b.add("weak_scaling_law", worst, 1e-6);
}

void check_seq_dual_path(Battery& b) {
  std::mt19937_64 eng(b.opts.seed + 5);
  double worst = 0.0;
  for (int i = 0; i < std::max(1, b.opts.battery_size / 2); ++i) {
    int n = (i % 2 == 0) ? 2 : 3;
    DensityMatrix rho = random_density(2, n, 2 * n, eng());
    MarginalInvariant inv = marginal_invariant_measurement(rho);
    ProjectiveMeasurement P =
        inv.degenerate ? measurement_from_axis(0.7, 1.3) : *inv.measurement;
    TwoOutcomeSplit split = split_from_measurement(P);
    double x = 1.1;
    for (int ms = 0; ms <= 5; ++ms) {
      for (int ns = 0; ns <= 5; ++ns) {
        double direct = seq_distance(rho, split, x, ms, ns);
        double formula = seq_distance_formula(rho, split, x, ms, ns);
        worst = std::max(worst, std::abs(direct - formula));
      }
    }
  }
  b.add("seq_dual_path", worst, 1e-10);
}

void check_seq_monotonicity(Battery& b) {
  DensityMatrix bell = pure_from_schmidt(SchmidtForm{{0.5, 0.5}, 2, 2});
  TwoOutcomeSplit split =
      split_from_measurement(measurement_from_axis(0.0, 0.0));
  const std::vector<double> xs{0.5, 1.0, 1.5, 3.0};
  double worst = 0.0;
  std::vector<std::vector<double>> curves;
  for (double x : xs) {
    std::vector<double> curve;
    for (int n = 1; n <= 20; ++n)
      curve.push_back(seq_distance(bell, split, x, 0, n));
    for (std::size_t i = 1; i < curve.size(); ++i)
      worst = std::max(worst, curve[i - 1] - curve[i]);
    curves.push_back(std::move(curve));
  }
  for (std::size_t xi = 1; xi < curves.size(); ++xi)
    for (std::size_t ni = 0; ni < curves[xi].size(); ++ni)
      worst = std::max(worst, curves[xi - 1][ni] - curves[xi][ni]);
  b.add("seq_monotonicity", std::max(0.0, worst), 1e-12);
}

void check_skew_equivalence(Battery& b) {
  std::mt19937_64 eng(b.opts.seed + 6);
  double worst = 0.0;
  for (int i = 0; i < b.opts.battery_size; ++i) {
    int n = (i % 2 == 0) ? 2 : 3;
    DensityMatrix rho = random_density(2, n, 1 + int(eng() % (2 * n)), eng());
    double h = h_min(rho, b.mopts(false)).value;
    double s = skew_min(rho, b.mopts(false)).value;
    worst = std::max(worst, std::abs(h - s));
  }
  b.add("skew_equivalence", worst, 1e-6);
}

void check_hs_min_cross(Battery& b) {
  std::mt19937_64 eng(b.opts.seed + 7);
  double worst = 0.0;
  for (int i = 0; i < std::max(1, b.opts.battery_size / 2); ++i) {
    int n = (i % 2 == 0) ? 2 : 3;
    DensityMatrix rho = random_density(2, n, 2 * n, eng());
    worst = std::max(worst,
                     hs_min_2xn(rho, b.mopts()).cross_check.value_or(0.0));
  }
  b.add("hs_min_cross_check", worst, 1e-6);
}

void check_family_formulas(Battery& b) {
  double worst_closed = 0.0;
  for (int i = 0; i <= 20; ++i) {
    double c = i / 20.0;
    DensityMatrix rho = bell_diagonal({-c, -c, -c});
    double formula = h_min_bell_diagonal({-c, -c, -c});
    double closed = h_min_2xn_closed(rho, b.mopts()).value;
    worst_closed = std::max(worst_closed, std::abs(formula - closed));
  }
  b.add("bell_diagonal_formula_vs_closed", worst_closed, 1e-8);

  double worst_opt = 0.0;
  for (double c : {0.2, 0.5, 0.8}) {
    DensityMatrix rho = bell_diagonal({-c, -c, -c});
    MeasureReport rep = h_min(rho, b.mopts());
    double opt = rep.certificate ? rep.certificate->best_value : rep.value;
    worst_opt =
        std::max(worst_opt, std::abs(h_min_bell_diagonal({-c, -c, -c}) - opt));
  }
  b.add("bell_diagonal_formula_vs_optimizer", worst_opt, 1e-6);

  double worst_iso = 0.0;
  for (int i = 0; i <= 20; ++i) {
    double x = i / 20.0;
    double closed = h_min(isotropic(2, x), b.mopts(false)).value;
    worst_iso = std::max(worst_iso, std::abs(h_min_isotropic(2, x) - closed));
  }
  b.add("isotropic_formula_vs_closed", worst_iso, 1e-8);

  double worst_iso3 = 0.0;
  for (double x : {0.3, 0.7}) {
    MeasureReport rep = h_min(isotropic(3, x), b.mopts());
    worst_iso3 =
        std::max(worst_iso3, std::abs(h_min_isotropic(3, x) - rep.value));
  }
  b.add("isotropic_formula_vs_optimizer_n3", worst_iso3, 1e-6);

  double worst_w = 0.0;
  for (int i = 0; i <= 20; ++i) {
    double x = -1.0 + i / 10.0;
    double closed = h_min(werner(2, x), b.mopts(false)).value;
    worst_w = std::max(worst_w, std::abs(h_min_werner(2, x) - closed));
  }
  b.add("werner_formula_vs_closed", worst_w, 1e-8);

  double worst_w3 = 0.0;
  for (double x : {-0.7, 0.4}) {
    MeasureReport rep = h_min(werner(3, x), b.mopts());
    worst_w3 = std::max(worst_w3, std::abs(h_min_werner(3, x) - rep.value));
  }
  b.add("werner_formula_vs_optimizer_d3", worst_w3, 1e-6);
}

void check_x0_arbitration(Battery& b) {
  int literal_everywhere = 0, restricted_everywhere = 0;
  double worst_winner = 0.0;
  bool literal_all = true, restricted_all = true;
  for (int i = 0; i < b.opts.battery_size; ++i) {
    int n = (i % 2 == 0) ? 2 : 3;
    DensityMatrix rho = random_x0_state(n, b.opts.seed + 977 * i);
    MeasureReport rep = h_min_2xn_closed(rho, b.mopts());
    double opt = rep.certificate->best_value;
    double err_lit = std::abs(rep.diagnostics.at("x0_literal") - opt);
    double err_res = std::abs(rep.diagnostics.at("x0_restricted") - opt);
    if (err_lit > 1e-6) literal_all = false;
    if (err_res > 1e-6) restricted_all = false;
    worst_winner = std::max(worst_winner, std::min(err_lit, err_res));
  }
  literal_everywhere = literal_all ? 1 : 0;
  restricted_everywhere = restricted_all ? 1 : 0;
  bool exactly_one = literal_everywhere + restricted_everywhere == 1;
  std::string winner = !exactly_one ? "none"
                       : (restricted_everywhere ? "restricted_block"
                                                : "literal_mu1");
  b.add_flag("x0_arbitration_unique_winner", exactly_one, "winner=" + winner);
  b.add("x0_arbitration_winner_residual", worst_winner, 1e-6,
        "winner=" + winner);
}

void check_affinity_flag(Battery& b) {
  // Block-diagonal in the measured basis: flag set, coincides with h_min.
  std::mt19937_64 eng(b.opts.seed + 8);
  DensityMatrix b1 = random_density(1, 2, 2, eng());
  DensityMatrix b2 = random_density(1, 2, 2, eng());
  ComplexMatrix M = ComplexMatrix::Zero(4, 4);
  M.block(0, 0, 2, 2) = 0.7 * b1.matrix;
  M.block(2, 2, 2, 2) = 0.3 * b2.matrix;
  DensityMatrix block = make_density(std::move(M), 2, 2);
  MeasureReport a_block = affinity_min(block, b.mopts());
  MeasureReport h_block = h_min(block, b.mopts(false));
  bool flag_ok = a_block.equals_hellinger.value_or(false);
  b.add_flag("affinity_flag_block_diagonal", flag_ok,
             "sqrt_pinch_gap=" + std::to_string(
                                     a_block.diagnostics.at("sqrt_pinch_gap")));
  b.add("affinity_equals_h_min_on_block",
        std::abs(a_block.value - h_block.value), 1e-8);

  DensityMatrix bell = pure_from_schmidt(SchmidtForm{{0.5, 0.5}, 2, 2});
  MeasureReport a_bell = affinity_min(bell, b.mopts());
  char note[128];
  std::snprintf(note, sizeof(note), "N_A=%.12g N_H=0.5 flag=%d",
                a_bell.value, int(a_bell.equals_hellinger.value_or(false)));
  b.add_flag("affinity_flag_entangled_unset",
             !a_bell.equals_hellinger.value_or(true), note);
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& opts) {
  Battery b{opts, {}};
  check_pure_state_formula(b);
  check_bell_maximum(b);
  check_product_faithfulness(b);
  check_local_unitary_invariance(b);
  check_local_ancilla_invariance(b);
  check_spectral_upper_bound(b);
  check_weak_scaling_law(b);
  check_seq_dual_path(b);
  check_seq_monotonicity(b);
  check_skew_equivalence(b);
  check_hs_min_cross(b);
  check_family_formulas(b);
  check_x0_arbitration(b);
  check_affinity_flag(b);
  b.report.all_passed = std::all_of(
      b.report.checks.begin(), b.report.checks.end(),
      [](const CheckResult& c) { return c.passed; });
  return b.report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream out;
  for (const CheckResult& c : report.checks) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-36s residual=%.12g tol=%.12g %s",
                  c.name.c_str(), c.max_residual, c.tolerance,
                  c.passed ? "PASS" : "FAIL");
    out << line;
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
  }
  out << (report.all_passed ? "ALL CHECKS PASSED" : "CHECKS FAILED") << "\n";
  return out.str();
}

}  // namespace minkit
