#pragma once

#include <vector>

#include "minkit/linalg.hpp"
#include "minkit/states.hpp"

namespace minkit {

/// Orthonormal Hermitian operator basis: I/sqrt(m) first, then the
/// generalized Gell-Mann families scaled to unit Hilbert-Schmidt norm, in
/// the fixed order symmetric, antisymmetric, diagonal. For m = 2 the
/// non-identity elements are sigma_x/sqrt(2), sigma_y/sqrt(2),
/// sigma_z/sqrt(2).
struct OperatorBasis {
  int dim = 0;
  std::vector<ComplexMatrix> elements;  // m^2 matrices, each m x m
};

OperatorBasis gell_mann_basis(int m);

/// Coefficients of a Hermitian operator M on an (m x n)-dimensional
/// bipartite space in the product basis X_i tensor Y_j:
/// gamma(i, j) = tr(M (X_i tensor Y_j)), zero-based storage with the
/// identity slot at index 0 (the text convention "i = 1" maps to index 0).
///
/// The local coefficient vectors x, y and the correlation block T are views
/// into gamma; the normalization is the raw trace coefficient throughout,
/// so reconstruction sum_ij gamma(i,j) X_i tensor Y_j is exact.
struct BlochDecomposition {
  int m = 0;
  int n = 0;
  RealMatrix gamma;  // m^2 x n^2

  RealVector x() const { return gamma.block(1, 0, m * m - 1, 1); }
  RealVector y() const {
    return gamma.block(0, 1, 1, n * n - 1).transpose();
  }
  RealMatrix T() const { return gamma.block(1, 1, m * m - 1, n * n - 1); }
};

BlochDecomposition bloch_decompose(const ComplexMatrix& M, int m, int n);

/// sum_ij gamma(i,j) X_i tensor Y_j.
ComplexMatrix bloch_reconstruct(const BlochDecomposition& D);

/// Decomposition of sqrt(rho); the Gamma whose singular structure drives
/// the Hellinger measures.
BlochDecomposition gamma_of_sqrt(const DensityMatrix& rho);

}  // namespace minkit
