#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "minkit/linalg.hpp"

namespace minkit {

/// Bipartite density matrix with subsystem dimensions (m, n). Computational
/// kets are a-major: |ij> = |i>_a tensor |j>_b, row index i*n + j.
struct DensityMatrix {
  ComplexMatrix matrix;
  int m = 0;
  int n = 0;

  int dim() const { return m * n; }
  ComplexMatrix marginal_a() const {
    return partial_trace(matrix, m, n, Subsystem::A);
  }
  ComplexMatrix marginal_b() const {
    return partial_trace(matrix, m, n, Subsystem::B);
  }
};

/// Throws (NotHermitian / NotUnitTrace / NotPSD / DimensionMismatch) unless
/// M is a valid density matrix on an m x n bipartite space.
void validate_density(const ComplexMatrix& M, int m, int n);

/// Validating constructor.
DensityMatrix make_density(ComplexMatrix M, int m, int n);

struct SchmidtForm {
  std::vector<double> coefficients;  // s_i >= 0, sum to 1
  int dim_a = 0;
  int dim_b = 0;
};

void validate_schmidt(const SchmidtForm& s);

/// Rank-1 projector onto sum_i sqrt(s_i) (U_a|i>) tensor (U_b|i>). Either
/// unitary may be omitted (identity).
DensityMatrix pure_from_schmidt(const SchmidtForm& s,
                                const std::optional<ComplexMatrix>& U_a = {},
                                const std::optional<ComplexMatrix>& U_b = {});

/// Two-qubit state (I + sum_i c_i sigma_i tensor sigma_i) / 4. Throws NotPSD
/// for c outside the physical tetrahedron.
DensityMatrix bell_diagonal(const std::array<double, 3>& c);

/// Eigenvalues of bell_diagonal(c) paired to the Bell basis in the fixed
/// order (Phi+, Phi-, Psi+, Psi-).
std::array<double, 4> bell_diagonal_eigenvalues(const std::array<double, 3>& c);

/// Isotropic state on n x n: (1-x)/(n^2-1) I + (n^2 x - 1)/(n^2-1) |phi><phi|
/// with |phi> = sum_i |ii>/sqrt(n), x in [0, 1].
DensityMatrix isotropic(int n, double x);

/// Werner state on d x d via the flip operator F, x = tr(rho F) in [-1, 1].
DensityMatrix werner(int d, double x);

/// Flip (swap) operator sum_{ab} |ab><ba| on d x d.
ComplexMatrix flip_operator(int d);

/// Ginibre construction: G G^dag / tr(G G^dag) with G an (mn) x rank matrix
/// of seeded standard complex Gaussians. Deterministic for fixed seed.
DensityMatrix random_density(int m, int n, int rank, std::uint64_t seed);

/// Haar-random unitary (QR of a Ginibre matrix, phases fixed).
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

/// rho^{a:bc} = rho^{ab} tensor sigma_c; the b-side dimension becomes n*k.
DensityMatrix attach_ancilla(const DensityMatrix& rho,
                             const ComplexMatrix& sigma_c);

/// Seeded standard-Gaussian stream. Box-Muller over raw mt19937_64 words
/// (the engine is fully specified by the standard, distributions are not),
/// so streams are identical across standard libraries.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double next();
  Complex next_complex();  // (x + iy)/sqrt(2), unit-variance complex Gaussian

 private:
  double uniform01();  // in (0, 1]
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace minkit
