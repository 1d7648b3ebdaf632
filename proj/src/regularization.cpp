#include "canonica/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/predicates.hpp"

namespace canonica {

Matrix apply_congruence(const Matrix& t, const Matrix& a, CongruenceMode mode) {
  return t * a * (mode == CongruenceMode::congruence ? transpose(t) : adjoint(t));
}

Matrix ReducedForm::assemble() const {
  const std::size_t n = order();
  Matrix out(n, n);
  out.set_block(0, 0, core);
  const std::size_t r = n - m1;
  for (std::size_t i = 0; i < m2; ++i) out(r - m2 + i, r + i) = sigma[i];
  return out;
}

Matrix ReducedForm::a_prime() const {
  const std::size_t k = order() - m1 - m2;
  return core.block(0, 0, k, k);
}
Matrix ReducedForm::b() const {
  const std::size_t k = order() - m1 - m2;
  return core.block(0, k, k, m2);
}
Matrix ReducedForm::c() const {
  const std::size_t k = order() - m1 - m2;
  return core.block(k, 0, m2, k);
}
Matrix ReducedForm::d() const {
  const std::size_t k = order() - m1 - m2;
  return core.block(k, k, m2, m2);
}

ReducedForm regularize(const Matrix& a, CongruenceMode mode, const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("regularization needs a square matrix");
  const std::size_t n = a.rows();
  ReducedForm f;
  f.mode = mode;
  f.transform = Matrix::identity(n);
  if (n == 0) return f;

  SvdResult s = svd(a);
  const std::size_t r = numerical_rank(s.sigma, n, n, tol);
  f.m1 = n - r;
  if (r == n) {
    f.core = a;
    return f;
  }
  if (r == 0) {
    f.core = Matrix(0, 0);
    f.residual = relative_residual(a, Matrix(n, n));
    return f;
  }
  const Matrix v1 = s.U.block(0, 0, n, r);
  const Matrix v2 = s.U.block(0, r, n, n - r);
  const Matrix v1h = adjoint(v1);
  const Matrix nblk = mode == CongruenceMode::congruence ? v1h * a * conj(v2) : v1h * a * v2;

  SvdResult ns = svd(nblk);
  // rank of N measured on A's scale
  f.m2 = numerical_rank(ns.sigma, r, n - r, tol, s.sigma.front());
  f.sigma.assign(ns.sigma.begin(), ns.sigma.begin() + static_cast<std::ptrdiff_t>(f.m2));

  // X: sigma singular vectors last
  std::vector<std::size_t> xorder;
  for (std::size_t j = f.m2; j < r; ++j) xorder.push_back(j);
  for (std::size_t j = 0; j < f.m2; ++j) xorder.push_back(j);
  const Matrix x = ns.U.select_cols(xorder);
  const Matrix& y = ns.V;

  Matrix z(n, n);
  z.set_block(0, 0, adjoint(x));
  z.set_block(r, r, mode == CongruenceMode::congruence ? transpose(y) : adjoint(y));
  f.transform = z * adjoint(s.U);

  const Matrix reduced = apply_congruence(f.transform, a, mode);
  f.core = reduced.block(0, 0, r, r);
  f.residual = relative_residual(reduced, f.assemble());
  return f;
}

Matrix RegularSplit::assemble() const {
  std::vector<Matrix> blocks;
  if (regular) blocks.push_back(*regular);
  for (double s : singular_sigmas) blocks.push_back(Matrix{{0.0, s}, {0.0, 0.0}});
  if (zero_count) blocks.emplace_back(zero_count, zero_count);
  return direct_sum(blocks);
}

RegularSplit split_regular_singular(const Matrix& a, CongruenceMode mode,
                                    const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("regularization needs a square matrix");
  const bool cong = mode == CongruenceMode::congruence;
  const double cres = cong ? congruence_normal_residual(a) : squared_normal_residual(a);
  if (cres > tol.residual_rtol)
    throw PreconditionError(cong ? "matrix is not congruence normal" : "matrix is not squared normal",
                            cres);

  const std::size_t n = a.rows();
  ReducedForm rf = regularize(a, mode, tol);
  RegularSplit out;
  out.mode = mode;
  const std::size_t k = n - rf.m1 - rf.m2;

  if (n > 0) {
    const std::size_t ra = n - rf.m1;
    const Matrix sq = cong ? conj(a) * a : a * a;
    const double sa = spectral_norm(a);
    const std::size_t rsq = rank(sq, tol, sa * sa);
    if (ra < rsq || ra - rsq != rf.m2)
      throw NumericalError("singular block count " + std::to_string(rf.m2) +
                               " disagrees with rank deficiency " +
                               std::to_string(static_cast<long>(ra) - static_cast<long>(rsq)),
                           static_cast<double>(rf.m2));
  }

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = 0; i < rf.m2; ++i) {
    perm.push_back(k + i);
    perm.push_back(n - rf.m1 + i);
  }
  for (std::size_t j = n - rf.m1 + rf.m2; j < n; ++j) perm.push_back(j);
  out.transform = rf.transform.select_rows(perm);

  if (k > 0) {
    Matrix reg = rf.a_prime();
    if (rank(reg, tol, std::max(1e-300, spectral_norm(a))) < k)
      throw NumericalError("regular part is singular", 0.0);
    out.regular = std::move(reg);
  }
  out.singular_sigmas = rf.sigma;
  out.zero_count = rf.m1 - rf.m2;
  out.residual = relative_residual(apply_congruence(out.transform, a, mode), out.assemble());
  return out;
}

}  // namespace canonica
