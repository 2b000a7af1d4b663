#include "minkit/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "minkit/errors.hpp"
#include "minkit/tolerances.hpp"

namespace minkit {

namespace {

const ComplexMatrix& pauli(int i) {
  static const ComplexMatrix sx = [] {
    ComplexMatrix s(2, 2);
    s << 0, 1, 1, 0;
    return s;
  }();
  static const ComplexMatrix sy = [] {
    ComplexMatrix s(2, 2);
    s << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return s;
  }();
  static const ComplexMatrix sz = [] {
    ComplexMatrix s(2, 2);
    s << 1, 0, 0, -1;
    return s;
  }();
  switch (i) {
    case 1: return sx;
    case 2: return sy;
    default: return sz;
  }
}

}  // namespace

void validate_density(const ComplexMatrix& M, int m, int n) {
  if (m < 1 || n < 1 || M.rows() != M.cols() ||
      M.rows() != static_cast<Eigen::Index>(m) * n) {
    throw DimensionMismatch("density matrix: size " + std::to_string(M.rows()) +
                            "x" + std::to_string(M.cols()) +
                            " does not match dims (" + std::to_string(m) +
                            ", " + std::to_string(n) + ")");
  }
  if (!is_hermitian(M, tol::kStateHermiticity)) {
    throw NotHermitian("density matrix: not Hermitian within tolerance");
  }
  if (std::abs(M.trace().real() - 1.0) > tol::kUnitTrace ||
      std::abs(M.trace().imag()) > tol::kUnitTrace) {
    throw NotUnitTrace("density matrix: trace " +
                       std::to_string(M.trace().real()) + " is not 1");
  }
  Spectrum spec = herm_eig(M);
  if (spec.eigenvalues.minCoeff() < tol::kPsdFloor) {
    throw NotPSD("density matrix: eigenvalue " +
                 std::to_string(spec.eigenvalues.minCoeff()) +
                 " below PSD floor");
  }
}

DensityMatrix make_density(ComplexMatrix M, int m, int n) {
  validate_density(M, m, n);
  return DensityMatrix{std::move(M), m, n};
}

void validate_schmidt(const SchmidtForm& s) {
  if (s.dim_a < 1 || s.dim_b < 1 ||
      s.coefficients.size() >
          static_cast<std::size_t>(std::min(s.dim_a, s.dim_b))) {
    throw InvalidSchmidt("Schmidt form: coefficient count exceeds min(dims)");
  }
  double sum = 0.0;
  for (double c : s.coefficients) {
    if (c < 0.0) throw InvalidSchmidt("Schmidt form: negative coefficient");
    sum += c;
  }
  if (std::abs(sum - 1.0) > tol::kSchmidtSum) {
    throw InvalidSchmidt("Schmidt form: coefficients sum to " +
                         std::to_string(sum) + ", not 1");
  }
}

DensityMatrix pure_from_schmidt(const SchmidtForm& s,
                                const std::optional<ComplexMatrix>& U_a,
                                const std::optional<ComplexMatrix>& U_b) {
  validate_schmidt(s);
  for (const auto& U : {U_a, U_b}) {
    if (U && !is_unitary(*U, tol::kUnitarity)) {
      throw NotUnitary("pure_from_schmidt: local operator not unitary");
    }
  }
  if (U_a && U_a->rows() != s.dim_a) {
    throw DimensionMismatch("pure_from_schmidt: U_a dimension mismatch");
  }
  if (U_b && U_b->rows() != s.dim_b) {
    throw DimensionMismatch("pure_from_schmidt: U_b dimension mismatch");
  }
  ComplexVector psi = ComplexVector::Zero(s.dim_a * s.dim_b);
  for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
    ComplexVector a = U_a ? ComplexVector(U_a->col(i))
                          : ComplexVector(ComplexVector::Unit(s.dim_a, i));
    ComplexVector b = U_b ? ComplexVector(U_b->col(i))
                          : ComplexVector(ComplexVector::Unit(s.dim_b, i));
    double amp = std::sqrt(s.coefficients[i]);
    for (int p = 0; p < s.dim_a; ++p)
      for (int q = 0; q < s.dim_b; ++q)
        psi[p * s.dim_b + q] += amp * a[p] * b[q];
  }
  return make_density(psi * psi.adjoint(), s.dim_a, s.dim_b);
}

std::array<double, 4> bell_diagonal_eigenvalues(
    const std::array<double, 3>& c) {
  // Paired to |Phi+>, |Phi->, |Psi+>, |Psi-> in that order.
  return {0.25 * (1 + c[0] - c[1] + c[2]), 0.25 * (1 - c[0] + c[1] + c[2]),
          0.25 * (1 + c[0] + c[1] - c[2]), 0.25 * (1 - c[0] - c[1] - c[2])};
}

DensityMatrix bell_diagonal(const std::array<double, 3>& c) {
  for (double lambda : bell_diagonal_eigenvalues(c)) {
    if (lambda < tol::kPsdFloor) {
      throw NotPSD("bell_diagonal: c outside the physical tetrahedron");
    }
  }
  ComplexMatrix rho = ComplexMatrix::Identity(4, 4);
  for (int i = 1; i <= 3; ++i) {
    rho += c[i - 1] * kron(pauli(i), pauli(i));
  }
  return make_density(rho / 4.0, 2, 2);
}

DensityMatrix isotropic(int n, double x) {
  if (n < 2) throw InvalidDimension("isotropic: n must be >= 2");
  if (x < 0.0 || x > 1.0) throw OutOfRange("isotropic: x must be in [0, 1]");
  ComplexVector phi = ComplexVector::Zero(n * n);
  for (int i = 0; i < n; ++i) phi[i * n + i] = 1.0 / std::sqrt(double(n));
  double d2 = double(n) * n;
  ComplexMatrix rho =
      (1.0 - x) / (d2 - 1.0) * ComplexMatrix::Identity(n * n, n * n) +
      (d2 * x - 1.0) / (d2 - 1.0) * (phi * phi.adjoint());
  return make_density(std::move(rho), n, n);
}

ComplexMatrix flip_operator(int d) {
  ComplexMatrix F = ComplexMatrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) F(a * d + b, b * d + a) = 1.0;
  return F;
}

DensityMatrix werner(int d, double x) {
  if (d < 2) throw InvalidDimension("werner: d must be >= 2");
  if (x < -1.0 || x > 1.0) throw OutOfRange("werner: x must be in [-1, 1]");
  double denom = double(d) * d * d - d;
  ComplexMatrix rho =
      (d - x) / denom * ComplexMatrix::Identity(d * d, d * d) +
      (x * d - 1.0) / denom * flip_operator(d);
  return make_density(std::move(rho), d, d);
}

double GaussianStream::uniform01() {
  // 53-bit mantissa; +1 keeps the value strictly positive for the log.
  return (double((engine_() >> 11)) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

Complex GaussianStream::next_complex() {
  double re = next();
  double im = next();
  return Complex(re, im) / std::sqrt(2.0);
}

DensityMatrix random_density(int m, int n, int rank, std::uint64_t seed) {
  if (m < 1 || n < 1) throw InvalidDimension("random_density: dims must be >= 1");
  if (rank < 1 || rank > m * n) {
    throw InvalidRank("random_density: rank must be in [1, m*n]");
  }
  GaussianStream g(seed);
  ComplexMatrix G(m * n, rank);
  for (Eigen::Index i = 0; i < G.rows(); ++i)
    for (Eigen::Index j = 0; j < G.cols(); ++j) G(i, j) = g.next_complex();
  ComplexMatrix W = G * G.adjoint();
  W /= W.trace().real();
  W = (W + W.adjoint()) / 2.0;  // scrub round-off asymmetry
  return make_density(std::move(W), m, n);
}

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidDimension("random_unitary: dim must be >= 1");
  GaussianStream g(seed);
  ComplexMatrix G(dim, dim);
  for (Eigen::Index i = 0; i < G.rows(); ++i)
    for (Eigen::Index j = 0; j < G.cols(); ++j) G(i, j) = g.next_complex();
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  ComplexMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix phases so the distribution is Haar and the output deterministic.
  for (int j = 0; j < dim; ++j) {
    Complex r = R(j, j);
    Q.col(j) *= (std::abs(r) > 0 ? r / std::abs(r) : Complex(1, 0));
  }
  return Q;
}

DensityMatrix attach_ancilla(const DensityMatrix& rho,
                             const ComplexMatrix& sigma_c) {
  validate_density(sigma_c, 1, static_cast<int>(sigma_c.rows()));
  return make_density(kron(rho.matrix, sigma_c), rho.m,
                      rho.n * static_cast<int>(sigma_c.rows()));
}

}  // namespace minkit
