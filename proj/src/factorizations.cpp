#include <algorithm>
#include <cmath>

#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/kernels.hpp"

namespace canonica {

namespace {

// contiguous groups of a nonincreasing list; the zero group (sigma <= cut) is last
struct SigmaGroups {
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end)
  std::size_t rank = 0;
};

SigmaGroups group_sigma(const std::vector<double>& sigma, std::size_t rank, double radius) {
  SigmaGroups g;
  g.rank = rank;
  std::size_t b = 0;
  for (std::size_t i = 1; i <= rank; ++i)
    if (i == rank || sigma[i - 1] - sigma[i] > radius) {
      g.groups.emplace_back(b, i);
      b = i;
    }
  return g;
}

// irrational weight so distinct (re, im) pairs do not collide in R + wS
constexpr double kMix = 0.5772156649015329;

// symmetric unitary B = C C^T, C unitary
Matrix symmetric_unitary_root(const Matrix& b) {
  const std::size_t m = b.rows();
  if (m == 1) return Matrix{{std::sqrt(b(0, 0) / std::abs(b(0, 0)))}};
  Matrix mix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Complex s = 0.5 * (b(i, j) + b(j, i));
      mix(i, j) = s.real() + kMix * s.imag();
    }
  Matrix o = eigh(mix).U;  // real
  for (auto& z : o.data()) z = z.real();
  Matrix d = transpose(o) * b * o;
  Matrix c = o;
  for (std::size_t k = 0; k < m; ++k) {
    const Complex ph = std::abs(d(k, k)) > 0.0 ? d(k, k) / std::abs(d(k, k)) : Complex(1.0);
    const Complex half = std::sqrt(ph);
    for (std::size_t i = 0; i < m; ++i) c(i, k) *= half;
  }
  return c;
}

// skew unitary B = C J C^T, J = sum [[0,1],[-1,0]], C unitary
Matrix skew_unitary_root(const Matrix& b) {
  const std::size_t m = b.rows();
  Matrix c(m, m);
  for (std::size_t k = 0; k < m; k += 2) {
    Matrix done = c.block(0, 0, m, k);
    Matrix full = complete_unitary(done);
    std::vector<Complex> c1 = full.column_values(k);
    std::vector<Complex> c1bar(m);
    for (std::size_t i = 0; i < m; ++i) c1bar[i] = std::conj(c1[i]);
    std::vector<Complex> c2(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) c2[i] -= b(i, j) * c1bar[j];
    c.set_column(k, c1);
    c.set_column(k + 1, c2);
  }
  return c;
}

}  // namespace

TakagiResult takagi_symmetric(const Matrix& a, const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("Takagi factorization needs a square matrix");
  const double res = relative_residual(a, transpose(a));
  if (res > tol.residual_rtol) throw PreconditionError("matrix is not symmetric", res);
  const std::size_t n = a.rows();
  TakagiResult out{Matrix::identity(n), {}};
  if (n == 0) return out;
  SvdResult s = svd(a);
  out.sigma = s.sigma;
  const std::size_t r = numerical_rank(s.sigma, n, n, tol);
  const double smax = s.sigma.front();
  // S = U^* A conj(U) is block diagonal by sigma cluster
  Matrix sm = adjoint(s.U) * a * conj(s.U);
  SigmaGroups g = group_sigma(s.sigma, r, tol.cluster_rtol * smax);
  Matrix corr = Matrix::identity(n);
  for (auto [b, e] : g.groups) {
    double mean = 0.0;
    for (std::size_t i = b; i < e; ++i) mean += s.sigma[i];
    mean /= static_cast<double>(e - b);
    Matrix blk = sm.block(b, b, e - b, e - b) * Complex(1.0 / mean);
    corr.set_block(b, b, symmetric_unitary_root(blk));
  }
  out.V = s.U * corr;
  return out;
}

HuaResult hua_skew(const Matrix& a, const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("Hua factorization needs a square matrix");
  const std::size_t n = a.rows();
  if (n % 2 != 0) throw DimensionError("skew-symmetric factorization needs even dimension");
  const double res = relative_residual(a, -transpose(a));
  if (res > tol.residual_rtol) throw PreconditionError("matrix is not skew-symmetric", res);
  HuaResult out{Matrix::identity(n), {}};
  if (n == 0) return out;
  SvdResult s = svd(a);
  const std::size_t r = numerical_rank(s.sigma, n, n, tol);
  if (r < n) throw PreconditionError("skew-symmetric matrix is singular", s.sigma.back());
  const double smax = s.sigma.front();
  Matrix sm = adjoint(s.U) * a * conj(s.U);
  SigmaGroups g = group_sigma(s.sigma, r, tol.cluster_rtol * smax);
  Matrix corr = Matrix::identity(n);
  for (auto [b, e] : g.groups) {
    if ((e - b) % 2 != 0)
      throw NumericalError("odd singular value cluster in skew-symmetric matrix",
                           static_cast<double>(e - b));
    double mean = 0.0;
    for (std::size_t i = b; i < e; ++i) mean += s.sigma[i];
    mean /= static_cast<double>(e - b);
    Matrix blk = sm.block(b, b, e - b, e - b) * Complex(1.0 / mean);
    corr.set_block(b, b, skew_unitary_root(blk));
    for (std::size_t i = b; i < e; i += 2) out.tau.push_back(0.5 * (s.sigma[i] + s.sigma[i + 1]));
  }
  out.V = s.U * corr;
  return out;
}

}  // namespace canonica
