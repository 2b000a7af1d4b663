#include <doctest.h>

#include "minkit/errors.hpp"
#include "minkit/measures.hpp"

using namespace minkit;

namespace {

DensityMatrix bell_state() {
  return pure_from_schmidt(SchmidtForm{{0.5, 0.5}, 2, 2});
}

DensityMatrix random_product(int m, int n, std::uint64_t seed) {
  DensityMatrix a = random_density(1, m, m, seed);
  DensityMatrix b = random_density(1, n, n, seed + 1);
  return make_density(kron(a.matrix, b.matrix), m, n);
}

MeasureOptions fast_opts() {
  MeasureOptions opts;
  opts.cross_check = false;
  return opts;
}

}  // namespace

TEST_CASE("hellinger distance basics") {
  DensityMatrix rho = random_density(2, 2, 3, 1);
  CHECK(hellinger_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-14));

  DensityMatrix zero = pure_from_schmidt(SchmidtForm{{1.0}, 1, 2});
  ComplexMatrix one = ComplexMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  DensityMatrix sigma = make_density(std::move(one), 1, 2);
  CHECK(hellinger_distance(zero, sigma) == doctest::Approx(2.0));

  DensityMatrix tau = random_density(2, 2, 4, 2);
  double expand = 2.0 - 2.0 * (psd_sqrt(rho.matrix) * psd_sqrt(tau.matrix))
                            .trace()
                            .real();
  CHECK(hellinger_distance(rho, tau) == doctest::Approx(expand).epsilon(1e-12));

  DensityMatrix small = random_density(1, 2, 2, 3);
  CHECK_THROWS_AS(hellinger_distance(rho, small), DimensionMismatch);
}

TEST_CASE("hs_min_2xn on products, Bell, and Bell-diagonal states") {
  CHECK(hs_min_2xn(random_product(2, 2, 11), fast_opts()).value <
        1e-10);

  MeasureReport bell = hs_min_2xn(bell_state());
  CHECK(bell.value == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(bell.cross_check.value_or(1.0) < 1e-6);

  MeasureReport bd = hs_min_2xn(bell_diagonal({0.8, -0.6, 0.4}));
  CHECK(bd.value == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(bd.cross_check.value_or(1.0) < 1e-6);

  CHECK_THROWS_AS(hs_min_2xn(isotropic(3, 0.5)), WrongDimension);
}

TEST_CASE("h_min on products, Bell, and a random 2x3 state") {
  CHECK(h_min(random_product(2, 3, 21), fast_opts()).value < 1e-10);

  MeasureReport bell = h_min(bell_state());
  CHECK(bell.value == doctest::Approx(0.5).epsilon(1e-8));
  REQUIRE(bell.certificate.has_value());
  CHECK(std::abs(bell.certificate->best_value - 0.5) < 1e-6);
  CHECK(bell.method == Method::Both);

  MeasureReport rep = h_min(random_density(2, 3, 2, 31));
  CHECK(rep.cross_check.value_or(1.0) < 1e-6);
  CHECK(rep.value >= 0.0);
  CHECK(rep.value < 1.0);
}

TEST_CASE("h_min_pure closed values and pipeline agreement") {
  CHECK(h_min_pure(SchmidtForm{{1.0, 0.0}, 2, 2}) == doctest::Approx(0.0));
  CHECK(h_min_pure(SchmidtForm{{0.5, 0.5}, 2, 2}) == doctest::Approx(0.5));
  SchmidtForm s{{0.7, 0.3}, 2, 2};
  CHECK(h_min_pure(s) == doctest::Approx(0.42).epsilon(1e-12));
  DensityMatrix rho =
      pure_from_schmidt(s, random_unitary(2, 71), random_unitary(2, 72));
  CHECK(std::abs(h_min(rho).value - 0.42) < 1e-6);
}

TEST_CASE("upper bound holds and is exact on the Bell state spectrum") {
  DensityMatrix mixed = make_density(ComplexMatrix::Identity(6, 6) / 6.0, 2, 3);
  CHECK(h_min(mixed, fast_opts()).value <= h_min_upper_bound(mixed) + 1e-12);

  // Gamma Gamma^t of the Bell state is I/4, so the bound is 1 - 1/4.
  CHECK(h_min_upper_bound(bell_state()) == doctest::Approx(0.75).epsilon(1e-10));

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    int n = (seed % 2 == 0) ? 2 : 3;
    int rank = 1 + int(seed % (2 * n));
    DensityMatrix rho = random_density(2, n, rank, 1000 + seed);
    CHECK(h_min(rho, fast_opts()).value <=
          h_min_upper_bound(rho) + 1e-8);
  }
}

TEST_CASE("h_min_2xn_closed branches") {
  // Product with a generic marginal: nondegenerate branch gives 0.
  MeasureReport prod = h_min_2xn_closed(random_product(2, 2, 81));
  CHECK(prod.value < 1e-10);
  CHECK(prod.method == Method::ClosedForm);

  // Product with maximally mixed marginal: degenerate branch gives 0.
  DensityMatrix flat = make_density(
      kron(ComplexMatrix::Identity(2, 2) / 2.0,
           random_density(1, 3, 3, 82).matrix),
      2, 3);
  MeasureReport rep = h_min_2xn_closed(flat);
  CHECK(rep.value < 1e-8);
  CHECK(rep.method == Method::Both);
  CHECK(rep.diagnostics.count("x0_literal") == 1);
  CHECK(rep.diagnostics.count("x0_restricted") == 1);

  // Bell-diagonal: closed form equals the family formula and the optimizer.
  std::array<double, 3> c{-0.6, -0.6, -0.6};
  MeasureReport bd = h_min_2xn_closed(bell_diagonal(c));
  CHECK(std::abs(bd.value - h_min_bell_diagonal(c)) < 1e-10);
  CHECK(bd.cross_check.value_or(1.0) < 1e-6);

  // Nondegenerate marginal: matches the direct eigenprojector evaluation.
  DensityMatrix rho = random_density(2, 3, 4, 83);
  ComplexMatrix S = psd_sqrt(rho.matrix);
  MarginalInvariant inv = marginal_invariant_measurement(rho);
  REQUIRE(!inv.degenerate);
  double direct =
      1.0 -
      (S * apply_local_measurement(S, *inv.measurement)).trace().real();
  CHECK(std::abs(h_min_2xn_closed(rho).value - direct) < 1e-10);

  CHECK_THROWS_AS(h_min_2xn_closed(isotropic(3, 0.3)), WrongDimension);
}

TEST_CASE("bell diagonal family formula") {
  CHECK(h_min_bell_diagonal({0.0, 0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(h_min_bell_diagonal({-1.0, -1.0, -1.0}) ==
        doctest::Approx(0.5).epsilon(1e-12));
  std::array<double, 3> c{-0.5, -0.5, -0.5};
  MeasureReport rep = h_min(bell_diagonal(c));
  REQUIRE(rep.certificate.has_value());
  CHECK(std::abs(h_min_bell_diagonal(c) - rep.certificate->best_value) <
        1e-6);
  CHECK_THROWS_AS(h_min_bell_diagonal({1.0, 1.0, 1.0}), NotPSD);
}

TEST_CASE("isotropic family formula") {
  CHECK(h_min_isotropic(2, 0.25) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h_min_isotropic(2, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  double formula = h_min_isotropic(3, 0.5);
  MeasureReport rep = h_min(isotropic(3, 0.5));
  CHECK(std::abs(formula - rep.value) < 1e-6);
  CHECK_THROWS_AS(h_min_isotropic(2, -0.1), OutOfRange);
}

TEST_CASE("werner family formula") {
  CHECK(h_min_werner(2, 0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h_min_werner(2, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(h_min_werner(2, -1.0) == doctest::Approx(0.5).epsilon(1e-12));
  // The d = 2 Werner state is Bell-diagonal with c_i = (2x - 1)/3.
  for (double x : {-0.8, -0.2, 0.3, 0.9}) {
    double c = (2.0 * x - 1.0) / 3.0;
    CHECK(std::abs(h_min_werner(2, x) - h_min_bell_diagonal({c, c, c})) <
          1e-12);
  }
  MeasureReport rep = h_min(werner(2, 1.0));
  REQUIRE(rep.certificate.has_value());
  CHECK(std::abs(rep.certificate->best_value - 1.0 / 6.0) < 1e-6);
  CHECK_THROWS_AS(h_min_werner(2, 1.2), OutOfRange);
}

TEST_CASE("weak h_min scaling behavior") {
  DensityMatrix bell = bell_state();
  MeasureReport strong = weak_h_min(bell, 20.0);
  CHECK(std::abs(strong.value - 0.5) < 1e-6);

  MeasureReport unit = weak_h_min(bell, 1.0);
  double tau = 1.0 / std::cosh(1.0);
  CHECK(std::abs(unit.value - 0.5 * (1 - tau) * (1 - tau)) < 1e-6);
  CHECK(unit.cross_check.value_or(1.0) < 1e-6);

  CHECK(weak_h_min(random_product(2, 2, 91), 1.3, fast_opts()).value < 1e-8);
  CHECK_THROWS_AS(weak_h_min(bell, 0.0), OutOfRange);
  CHECK_THROWS_AS(weak_h_min(isotropic(3, 0.5), 1.0), WrongDimension);
}

TEST_CASE("sequential distances") {
  DensityMatrix bell = bell_state();
  TwoOutcomeSplit split =
      split_from_measurement(measurement_from_axis(0.0, 0.0));

  CHECK(seq_distance(bell, split, 1.5, 4, 4) == doctest::Approx(0.0));
  CHECK(seq_distance(bell, split, 1.5, 0, 0) == doctest::Approx(0.0));

  // H^0_n for the Bell state is (1 - tau^n)^2 / 2, increasing toward 1/2.
  double tau = 1.0 / std::cosh(1.5);
  double previous = -1.0;
  for (int n = 1; n <= 10; ++n) {
    double h = seq_distance(bell, split, 1.5, 0, n);
    double expect = 0.5 * std::pow(1.0 - std::pow(tau, n), 2.0);
    CHECK(std::abs(h - expect) < 1e-12);
    CHECK(h > previous);
    CHECK(h < 0.5);
    previous = h;
  }

  DensityMatrix rho = random_density(2, 3, 5, 404);
  TwoOutcomeSplit split2 =
      split_from_measurement(measurement_from_axis(0.9, 5.1));
  for (int ms : {0, 2, 5}) {
    for (int ns : {0, 1, 3}) {
      double direct = seq_distance(rho, split2, 1.1, ms, ns);
      double formula = seq_distance_formula(rho, split2, 1.1, ms, ns);
      CHECK(std::abs(direct - formula) < 1e-10);
    }
  }
  CHECK_THROWS_AS(seq_distance(bell, split, 1.0, -1, 0), OutOfRange);
}

TEST_CASE("skew information") {
  DensityMatrix rho = random_density(2, 2, 3, 7);
  CHECK(skew_information(rho, rho.matrix) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Pure state with projector observable: <K> - <K>^2.
  DensityMatrix pure = random_density(2, 2, 1, 8);
  ProjectiveMeasurement P = projective_from_unitary(random_unitary(2, 9));
  ComplexMatrix K = kron(P.projectors[0], ComplexMatrix::Identity(2, 2));
  // psd_sqrt of a numerically rank-1 state carries sqrt(eps)-size noise in
  // the null space, so the identity holds to ~1e-8, not machine precision.
  double mean = (pure.matrix * K).trace().real();
  CHECK(std::abs(skew_information(pure, K) - (mean - mean * mean)) < 1e-7);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DensityMatrix r = random_density(2, 2, 4, 600 + seed);
    GaussianStream g(700 + seed);
    ComplexMatrix A(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) A(i, j) = g.next_complex();
    ComplexMatrix H = (A + A.adjoint()) / 2.0;
    CHECK(skew_information(r, H) >= -1e-12);
  }
  ComplexMatrix bad = ComplexMatrix::Zero(4, 4);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(skew_information(rho, bad), NotHermitian);
}

TEST_CASE("skew_min equals h_min") {
  CHECK(skew_min(random_product(2, 2, 55), fast_opts()).value < 1e-8);
  CHECK(std::abs(skew_min(bell_state()).value - 0.5) < 1e-6);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DensityMatrix rho = random_density(2, 2, 1 + int(seed % 4), 800 + seed);
    double h = h_min(rho, fast_opts()).value;
    double s = skew_min(rho, fast_opts()).value;
    CHECK(std::abs(h - s) < 1e-6);
  }
}

TEST_CASE("affinity_min values and the equality flag") {
  CHECK(affinity_min(random_product(2, 2, 65), fast_opts()).value < 1e-8);

  // Block-diagonal in its own invariant basis: flag set, equals h_min.
  DensityMatrix b1 = random_density(1, 2, 2, 66);
  DensityMatrix b2 = random_density(1, 2, 1, 67);
  ComplexMatrix M = ComplexMatrix::Zero(4, 4);
  M.block(0, 0, 2, 2) = 0.6 * b1.matrix;
  M.block(2, 2, 2, 2) = 0.4 * b2.matrix;
  DensityMatrix block = make_density(std::move(M), 2, 2);
  MeasureReport rep = affinity_min(block);
  CHECK(rep.equals_hellinger.value_or(false));
  CHECK(std::abs(rep.value - h_min(block, fast_opts()).value) < 1e-8);

  // Bell state: affinity value 1 - 1/sqrt(2), below h_min = 0.5 and flagged
  // as not coinciding.
  MeasureReport bell = affinity_min(bell_state());
  CHECK(std::abs(bell.value - (1.0 - 1.0 / std::sqrt(2.0))) < 1e-6);
  CHECK(!bell.equals_hellinger.value_or(true));
}

TEST_CASE("nonnegativity and faithfulness across random products") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    int n = (seed % 2 == 0) ? 2 : 3;
    DensityMatrix rho = random_product(2, n, 900 + 7 * seed);
    CHECK(h_min(rho, fast_opts()).value < 1e-8);
    CHECK(hs_min_2xn(rho, fast_opts()).value < 1e-8);
    CHECK(skew_min(rho, fast_opts()).value < 1e-8);
    CHECK(affinity_min(rho, fast_opts()).value < 1e-8);
  }
}

TEST_CASE("local unitary invariance of h_min") {
  std::uint64_t seed = 4000;
  for (int i = 0; i < 2; ++i) {
    int n = (i == 0) ? 2 : 3;
    DensityMatrix rho = random_density(2, n, n, seed++);
    double base = h_min(rho, fast_opts()).value;
    for (int j = 0; j < 20; ++j) {
      ComplexMatrix W =
          kron(random_unitary(2, seed++), random_unitary(n, seed++));
      DensityMatrix rotated =
          make_density(W * rho.matrix * W.adjoint(), 2, n);
      CHECK(std::abs(h_min(rotated, fast_opts()).value - base) < 1e-6);
    }
  }
}

TEST_CASE("local ancilla invariance of h_min") {
  DensityMatrix rho = random_density(2, 2, 3, 5000);
  double base = h_min(rho, fast_opts()).value;
  for (int k : {2, 3}) {
    DensityMatrix anc = random_density(1, k, k, 5100 + k);
    DensityMatrix ext = attach_ancilla(rho, anc.matrix);
    CHECK(ext.n == 2 * k);
    CHECK(std::abs(h_min(ext, fast_opts()).value - base) < 1e-6);
  }
  // Bell plus maximally mixed qubit: 2x2 tensor 2 -> 2x4.
  DensityMatrix wide =
      attach_ancilla(bell_state(), ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK(std::abs(h_min(wide, fast_opts()).value - 0.5) < 1e-6);
}

TEST_CASE("h_min values are clipped, never below tolerance") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DensityMatrix rho = random_density(2, 2, 4, 6000 + seed);
    MeasureReport rep = h_min(rho, fast_opts());
    CHECK(rep.value >= 0.0);
  }
}
