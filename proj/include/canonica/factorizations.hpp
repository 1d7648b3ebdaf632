#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "canonica/matrix.hpp"

namespace canonica {

/// A = U * diag(sigma) * V^*. U is rows x rows, V is cols x cols, sigma has
/// min(rows, cols) entries, nonincreasing.
struct SvdResult {
  Matrix U;
  std::vector<double> sigma;
  Matrix V;
};

/// One-sided Jacobi SVD. Deterministic for fixed input bits. Throws
/// ConvergenceError (carrying the orthogonality residual) after max_sweeps.
SvdResult svd(const Matrix& a, int max_sweeps = 64);
std::vector<double> singular_values(const Matrix& a);

/// Numerical rank: count of sigma_i > rank_rtol * scale * max(rows, cols),
/// with scale = sigma_max unless given.
std::size_t numerical_rank(std::span<const double> sigma, std::size_t rows, std::size_t cols,
                           const ToleranceConfig& tol, double scale = -1.0);
std::size_t rank(const Matrix& a, const ToleranceConfig& tol, double scale = -1.0);

/// Hermitian eigendecomposition by cyclic complex Jacobi: H = U diag(w) U^*,
/// w ascending.
struct HermitianEig {
  Matrix U;
  std::vector<double> w;
};
HermitianEig eigh(const Matrix& h, int max_sweeps = 64);

/// A = U diag(lambda) U^* for normal A.
struct NormalEig {
  Matrix U;
  std::vector<Complex> lambda;
  double residual = 0.0;  // ||A - U diag U^*||_F / max(1, ||A||_F)
};
/// Rejects (PreconditionError) when the relative commutator residual of
/// AA^* vs A^*A exceeds residual_tol (default tol.residual_rtol).
NormalEig eig_normal(const Matrix& a, const ToleranceConfig& tol, double residual_tol = -1.0);

/// Eigenvalues of an arbitrary square matrix (Hessenberg + shifted QR).
std::vector<Complex> eigvals_general(const Matrix& a);

enum class PolarSide { left, right };

/// right: A = W Q;  left: A = Q W (Q holds the left factor P).
struct PolarResult {
  Matrix W;
  Matrix Q;
  PolarSide side = PolarSide::right;
};
PolarResult polar(const Matrix& a, PolarSide side);

/// A = V diag(sigma) V^T for symmetric A.
struct TakagiResult {
  Matrix V;
  std::vector<double> sigma;
};
TakagiResult takagi_symmetric(const Matrix& a, const ToleranceConfig& tol);

/// A = V (sum_j tau_j [[0,1],[-1,0]]) V^T for nonsingular skew-symmetric A.
struct HuaResult {
  Matrix V;
  std::vector<double> tau;
};
HuaResult hua_skew(const Matrix& a, const ToleranceConfig& tol);

/// Orthonormal bases: V1 for range(A), V2 for null(A^*).
struct RangeNullBases {
  Matrix V1;
  Matrix V2;
};
RangeNullBases range_null_bases(const Matrix& a, const ToleranceConfig& tol);

/// Single-linkage clusters of `values` at the given radius. Clusters are
/// ordered by their smallest member index; members ascending.
std::vector<std::vector<std::size_t>> cluster_values(std::span<const Complex> values,
                                                     double radius);

/// Extends orthonormal columns q (m x k) to an m x m unitary [q  q_perp].
Matrix complete_unitary(const Matrix& q);

}  // namespace canonica
