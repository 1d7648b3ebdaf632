#pragma once

#include <optional>
#include <vector>

#include "canonica/matrix.hpp"

namespace canonica {

enum class CongruenceMode { congruence, star };

/// Reduced matrix
///   [ A'  B  |   0   ]   n - m1 - m2 rows
///   [ C   D  | [S 0] ]   m2 rows
///   [    0   |   0   ]   m1 rows
/// with S = diag(sigma). `core` is the leading (n - m1) square block.
struct ReducedForm {
  CongruenceMode mode = CongruenceMode::congruence;
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  Matrix core;
  std::vector<double> sigma;
  Matrix transform;  // T A T^T (congruence) or T A T^* (star) = assemble()
  double residual = 0.0;

  std::size_t order() const { return transform.rows(); }
  Matrix assemble() const;
  Matrix a_prime() const;
  Matrix b() const;
  Matrix c() const;
  Matrix d() const;
};

/// T A T^T or T A T^*.
Matrix apply_congruence(const Matrix& t, const Matrix& a, CongruenceMode mode);

ReducedForm regularize(const Matrix& a, CongruenceMode mode, const ToleranceConfig& tol);

/// regular (+) sum_i sigma_i [[0,1],[0,0]] (+) 0_{zero_count}
struct RegularSplit {
  CongruenceMode mode = CongruenceMode::congruence;
  std::optional<Matrix> regular;
  std::vector<double> singular_sigmas;
  std::size_t zero_count = 0;
  Matrix transform;
  double residual = 0.0;

  Matrix assemble() const;
  std::size_t regular_order() const { return regular ? regular->rows() : 0; }
};

/// Requires congruence normal (congruence mode) or squared normal (star
/// mode); throws PreconditionError with the class residual otherwise.
/// Throws NumericalError when the sigma count disagrees with
/// rank A - rank conj(A)A (resp. rank A - rank A^2).
RegularSplit split_regular_singular(const Matrix& a, CongruenceMode mode,
                                    const ToleranceConfig& tol);

}  // namespace canonica
