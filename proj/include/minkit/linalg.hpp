#pragma once

#include <Eigen/Dense>
#include <complex>

namespace minkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class Subsystem { A, B };

/// Eigendecomposition of a Hermitian matrix: eigenvalues ascending,
/// eigenvector columns orthonormal, H = V diag(eigenvalues) V^dag.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

bool is_hermitian(const ComplexMatrix& M, double tol);
bool is_unitary(const ComplexMatrix& U, double tol);

/// Throws NotHermitian unless ||H - H^dag|| <= kHermiticity * max(1, ||H||),
/// NoConvergence if the underlying iteration fails.
Spectrum herm_eig(const ComplexMatrix& H);

/// Hermitian PSD square root. Eigenvalues in [kPsdFloor, 0) are clipped to
/// zero; anything below kPsdFloor throws NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& rho);

/// Tensor product, row-major block convention: (A kron B)[(i*p+k),(j*q+l)]
/// = A(i,j) * B(k,l) for B of size p x q.
ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B);

/// Partial trace of an (m*n) x (m*n) matrix over the discarded subsystem.
/// Composite index is a-major: row = a*n + b.
ComplexMatrix partial_trace(const ComplexMatrix& M, int m, int n,
                            Subsystem keep);

/// Hilbert-Schmidt inner product tr(A^dag B).
Complex hs_inner(const ComplexMatrix& A, const ComplexMatrix& B);

/// ||A||^2 = tr(A^dag A), real and nonnegative.
double hs_norm_sq(const ComplexMatrix& A);
double hs_norm(const ComplexMatrix& A);

}  // namespace minkit
