#include "minkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minkit/errors.hpp"
#include "minkit/tolerances.hpp"

namespace minkit {

bool is_hermitian(const ComplexMatrix& M, double tol) {
  if (M.rows() != M.cols()) return false;
  return hs_norm(M - M.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& U, double tol) {
  if (U.rows() != U.cols()) return false;
  ComplexMatrix gram = U.adjoint() * U;
  gram -= ComplexMatrix::Identity(U.rows(), U.cols());
  return hs_norm(gram) <= tol;
}

Spectrum herm_eig(const ComplexMatrix& H) {
  if (H.rows() != H.cols()) {
    throw DimensionMismatch("herm_eig: matrix is " + std::to_string(H.rows()) +
                            "x" + std::to_string(H.cols()) + ", not square");
  }
  const double scale = std::max(1.0, hs_norm(H));
  if (hs_norm(H - H.adjoint()) > tol::kHermiticity * scale) {
    throw NotHermitian("herm_eig: ||H - H^dag|| exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      (H + H.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("herm_eig: eigenvalue iteration failed");
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho) {
  Spectrum spec = herm_eig(rho);
  RealVector roots(spec.eigenvalues.size());
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    double lambda = spec.eigenvalues[i];
    if (lambda < tol::kPsdFloor) {
      throw NotPSD("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                   " below PSD floor");
    }
    roots[i] = std::sqrt(std::max(lambda, 0.0));
  }
  return spec.eigenvectors * roots.asDiagonal() * spec.eigenvectors.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
  ComplexMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& M, int m, int n,
                            Subsystem keep) {
  if (m < 1 || n < 1 || M.rows() != M.cols() ||
      M.rows() != static_cast<Eigen::Index>(m) * n) {
    throw DimensionMismatch("partial_trace: matrix size " +
                            std::to_string(M.rows()) + " does not equal " +
                            std::to_string(m) + "*" + std::to_string(n));
  }
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < n; ++c) out(a, b) += M(a * n + c, b * n + c);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d)
      for (int a = 0; a < m; ++a) out(c, d) += M(a * n + c, a * n + d);
  return out;
}

Complex hs_inner(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw DimensionMismatch("hs_inner: shapes differ");
  }
  return A.conjugate().cwiseProduct(B).sum();
}

double hs_norm_sq(const ComplexMatrix& A) {
  return A.squaredNorm();  // sum |a_ij|^2 = tr(A^dag A)
}

double hs_norm(const ComplexMatrix& A) { return A.norm(); }

}  // namespace minkit
