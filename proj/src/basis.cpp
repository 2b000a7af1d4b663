#include "minkit/basis.hpp"

#include <cmath>
#include <string>

#include "minkit/errors.hpp"
#include "minkit/tolerances.hpp"

namespace minkit {

OperatorBasis gell_mann_basis(int m) {
  if (m < 2) throw InvalidDimension("gell_mann_basis: m must be >= 2");
  OperatorBasis basis;
  basis.dim = m;
  basis.elements.reserve(m * m);
  basis.elements.push_back(ComplexMatrix::Identity(m, m) /
                           std::sqrt(double(m)));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // Symmetric family: (E_jk + E_kj)/sqrt(2), j < k lexicographic.
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      ComplexMatrix X = ComplexMatrix::Zero(m, m);
      X(j, k) = inv_sqrt2;
      X(k, j) = inv_sqrt2;
      basis.elements.push_back(std::move(X));
    }
  // Antisymmetric family: -i(E_jk - E_kj)/sqrt(2).
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      ComplexMatrix X = ComplexMatrix::Zero(m, m);
      X(j, k) = Complex(0, -inv_sqrt2);
      X(k, j) = Complex(0, inv_sqrt2);
      basis.elements.push_back(std::move(X));
    }
  // Diagonal family: (E_00 + ... + E_{l-1,l-1} - l E_ll)/sqrt(l(l+1)).
  for (int l = 1; l < m; ++l) {
    ComplexMatrix X = ComplexMatrix::Zero(m, m);
    double norm = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int j = 0; j < l; ++j) X(j, j) = norm;
    X(l, l) = -double(l) * norm;
    basis.elements.push_back(std::move(X));
  }
  return basis;
}

BlochDecomposition bloch_decompose(const ComplexMatrix& M, int m, int n) {
  if (M.rows() != M.cols() ||
      M.rows() != static_cast<Eigen::Index>(m) * n) {
    throw DimensionMismatch("bloch_decompose: matrix size " +
                            std::to_string(M.rows()) + " != " +
                            std::to_string(m) + "*" + std::to_string(n));
  }
  if (!is_hermitian(M, tol::kStateHermiticity)) {
    throw NotHermitian("bloch_decompose: input not Hermitian");
  }
  OperatorBasis X = gell_mann_basis(m);
  OperatorBasis Y = gell_mann_basis(n);
  BlochDecomposition D;
  D.m = m;
  D.n = n;
  D.gamma.resize(m * m, n * n);
  for (int i = 0; i < m * m; ++i) {
    for (int j = 0; j < n * n; ++j) {
      Complex g = hs_inner(kron(X.elements[i], Y.elements[j]), M);
      if (std::abs(g.imag()) > tol::kBlochImagResidue) {
        throw NotHermitian(
            "bloch_decompose: imaginary residue " +
            std::to_string(g.imag()) + " in coefficient (" +
            std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      D.gamma(i, j) = g.real();
    }
  }
  return D;
}

ComplexMatrix bloch_reconstruct(const BlochDecomposition& D) {
  OperatorBasis X = gell_mann_basis(D.m);
  OperatorBasis Y = gell_mann_basis(D.n);
  ComplexMatrix M = ComplexMatrix::Zero(D.m * D.n, D.m * D.n);
  for (int i = 0; i < D.m * D.m; ++i)
    for (int j = 0; j < D.n * D.n; ++j)
      M += D.gamma(i, j) * kron(X.elements[i], Y.elements[j]);
  return M;
}

BlochDecomposition gamma_of_sqrt(const DensityMatrix& rho) {
  return bloch_decompose(psd_sqrt(rho.matrix), rho.m, rho.n);
}

}  // namespace minkit
