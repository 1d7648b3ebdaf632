#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/kernels.hpp"

namespace canonica {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// column-major scratch: col(j) is contiguous
struct Columns {
  std::size_t m = 0, n = 0;
  std::vector<Complex> v;
  Columns(std::size_t rows, std::size_t cols) : m(rows), n(cols), v(rows * cols) {}
  Complex* col(std::size_t j) { return v.data() + j * m; }
  const Complex* col(std::size_t j) const { return v.data() + j * m; }
};

SvdResult svd_tall(const Matrix& a, int max_sweeps) {
  const std::size_t m = a.rows(), n = a.cols();
  Columns g(m, n), vt(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) g.col(j)[i] = a(i, j);
    vt.col(j)[j] = 1.0;
  }
  const double thresh = static_cast<double>(m) * kEps;
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) total += kernels::squared_norm(m, g.col(j));
  // columns this small land in the completion anyway
  const double negligible = kEps * kEps * total;

  bool converged = n < 2;
  double worst = 0.0;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = kernels::squared_norm(m, g.col(p));
        const double beta = kernels::squared_norm(m, g.col(q));
        if (alpha <= negligible || beta <= negligible) continue;
        const Complex gamma = kernels::dot(m, g.col(p), g.col(q));
        const double ag = std::abs(gamma);
        const double scale = std::sqrt(alpha) * std::sqrt(beta);
        worst = std::max(worst, ag / scale);
        if (ag <= thresh * scale) continue;
        rotated = true;
        const Complex ph = std::conj(gamma) / ag;  // e^{-i phi}
        const double zeta = (beta - alpha) / (2.0 * ag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const kernels::Rotation r{c, s, -s * ph, c * ph};
        kernels::rotate_pair(m, g.col(p), g.col(q), r);
        kernels::rotate_pair(n, vt.col(p), vt.col(q), r);
      }
    }
    converged = !rotated;
  }
  if (!converged)
    throw ConvergenceError("Jacobi SVD did not converge", worst);

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(kernels::squared_norm(m, g.col(j)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult res;
  res.sigma.resize(n);
  res.V = Matrix(n, n);
  Matrix u(m, n);
  const double smax = n ? norms[order[0]] : 0.0;
  const double floor = smax * static_cast<double>(m) * kEps;
  std::size_t filled = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    res.sigma[k] = norms[j];
    for (std::size_t i = 0; i < n; ++i) res.V(i, k) = vt.col(j)[i];
    if (norms[j] > floor && norms[j] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) u(i, k) = g.col(j)[i] / norms[j];
      filled = k + 1;
    }
  }
  // columns for numerically zero sigma come from the completion
  res.U = complete_unitary(u.block(0, 0, m, filled));
  return res;
}

}  // namespace

Matrix complete_unitary(const Matrix& q) {
  const std::size_t m = q.rows();
  std::size_t k = q.cols();
  Matrix out(m, m);
  out.set_block(0, 0, q);
  // greedy Gram-Schmidt against e_i, two passes
  while (k < m) {
    std::vector<Complex> best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < m; ++e) {
      std::vector<Complex> v(m, 0.0);
      v[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t c = 0; c < k; ++c) {
          Complex proj = 0.0;
          for (std::size_t i = 0; i < m; ++i) proj += std::conj(out(i, c)) * v[i];
          for (std::size_t i = 0; i < m; ++i) v[i] -= proj * out(i, c);
        }
      double nv = std::sqrt(kernels::squared_norm(m, v.data()));
      if (nv > best_norm + 1e-12) {
        best_norm = nv;
        best = std::move(v);
      }
    }
    for (std::size_t i = 0; i < m; ++i) out(i, k) = best[i] / best_norm;
    ++k;
  }
  return out;
}

SvdResult svd(const Matrix& a, int max_sweeps) {
  if (a.rows() >= a.cols()) return svd_tall(a, max_sweeps);
  SvdResult t = svd_tall(adjoint(a), max_sweeps);
  return SvdResult{std::move(t.V), std::move(t.sigma), std::move(t.U)};
}

std::vector<double> singular_values(const Matrix& a) { return svd(a).sigma; }

std::size_t numerical_rank(std::span<const double> sigma, std::size_t rows, std::size_t cols,
                           const ToleranceConfig& tol, double scale) {
  if (sigma.empty()) return 0;
  if (scale < 0.0) scale = sigma.front();
  const double cut = tol.rank_rtol * scale * static_cast<double>(std::max(rows, cols));
  std::size_t r = 0;
  for (double s : sigma)
    if (s > cut) ++r;
  return r;
}

std::size_t rank(const Matrix& a, const ToleranceConfig& tol, double scale) {
  if (a.empty()) return 0;
  auto s = singular_values(a);
  return numerical_rank(s, a.rows(), a.cols(), tol, scale);
}

RangeNullBases range_null_bases(const Matrix& a, const ToleranceConfig& tol) {
  const std::size_t m = a.rows();
  if (a.empty()) return {Matrix(m, 0), Matrix::identity(m)};
  SvdResult s = svd(a);
  std::size_t r = numerical_rank(s.sigma, a.rows(), a.cols(), tol);
  return {s.U.block(0, 0, m, r), s.U.block(0, r, m, m - r)};
}

PolarResult polar(const Matrix& a, PolarSide side) {
  if (!a.is_square()) throw DimensionError("polar decomposition needs a square matrix");
  SvdResult s = svd(a);
  Matrix sig = Matrix::diagonal(std::span<const double>(s.sigma));
  PolarResult p;
  p.side = side;
  p.W = s.U * adjoint(s.V);
  Matrix f = side == PolarSide::right ? s.V : s.U;
  Matrix q = f * sig * adjoint(f);
  p.Q = (q + adjoint(q)) * Complex(0.5);
  return p;
}

}  // namespace canonica
