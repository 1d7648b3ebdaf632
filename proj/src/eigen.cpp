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
}

HermitianEig eigh(const Matrix& h_in, int max_sweeps) {
  if (!h_in.is_square()) throw DimensionError("eigh needs a square matrix");
  const std::size_t n = h_in.rows();
  // column-major copy, Hermitian part only
  std::vector<Complex> h(n * n), v(n * n, 0.0);
  auto H = [&](std::size_t i, std::size_t j) -> Complex& { return h[j * n + i]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) H(i, j) = 0.5 * (h_in(i, j) + std::conj(h_in(j, i)));
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double fro = 0.0;
  for (auto& z : h) fro += std::norm(z);
  fro = std::sqrt(fro);
  const double skip = kEps * fro / static_cast<double>(std::max<std::size_t>(n, 1));

  bool converged = n < 2;
  double worst = 0.0;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex hpq = H(p, q);
        const double ag = std::abs(hpq);
        worst = std::max(worst, ag);
        if (ag <= skip) continue;
        rotated = true;
        const Complex ph = std::conj(hpq) / ag;  // e^{-i phi}
        const double zeta = (H(q, q).real() - H(p, p).real()) / (2.0 * ag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const kernels::Rotation r{c, s, -s * ph, c * ph};
        // H <- H J on columns, then J^* H on rows
        kernels::rotate_pair(n, &h[p * n], &h[q * n], r);
        for (std::size_t j = 0; j < n; ++j) {
          const Complex xp = H(p, j), xq = H(q, j);
          H(p, j) = std::conj(r.j00) * xp + std::conj(r.j10) * xq;
          H(q, j) = std::conj(r.j01) * xp + std::conj(r.j11) * xq;
        }
        H(p, q) = 0.0;
        H(q, p) = 0.0;
        H(p, p) = H(p, p).real();
        H(q, q) = H(q, q).real();
        kernels::rotate_pair(n, &v[p * n], &v[q * n], r);
      }
    }
    converged = !rotated;
  }
  if (!converged) throw ConvergenceError("Hermitian Jacobi did not converge", worst);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return H(a, a).real() < H(b, b).real(); });
  HermitianEig out{Matrix(n, n), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.w[k] = H(j, j).real();
    for (std::size_t i = 0; i < n; ++i) out.U(i, k) = v[j * n + i];
  }
  return out;
}

std::vector<std::vector<std::size_t>> cluster_values(std::span<const Complex> values,
                                                     double radius) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= radius) {
        std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return out;
}

NormalEig eig_normal(const Matrix& a, const ToleranceConfig& tol, double residual_tol) {
  if (!a.is_square()) throw DimensionError("eig_normal needs a square matrix");
  const std::size_t n = a.rows();
  if (residual_tol < 0.0) residual_tol = tol.residual_rtol;
  const Matrix ah = adjoint(a);
  const double nres = relative_residual(a * ah, ah * a);
  if (nres > residual_tol) throw PreconditionError("matrix is not normal", nres);
  NormalEig out;
  if (n == 0) return out;

  const Matrix herm = (a + ah) * Complex(0.5);
  const Matrix skew = (a - ah) * Complex(0.0, -0.5);
  HermitianEig he = eigh(herm);
  const double fro = frobenius_norm(a);
  std::vector<Complex> hv(he.w.begin(), he.w.end());
  auto clusters = cluster_values(hv, tol.cluster_rtol * fro);

  Matrix u = he.U;
  for (const auto& c : clusters) {
    if (c.size() < 2) continue;
    Matrix uc = u.select_cols(c);
    HermitianEig ke = eigh(adjoint(uc) * skew * uc);
    Matrix rot = uc * ke.U;
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t i = 0; i < n; ++i) u(i, c[k]) = rot(i, k);
  }
  out.lambda.resize(n);
  const Matrix au = a * u;
  for (std::size_t k = 0; k < n; ++k) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::conj(u(i, k)) * au(i, k);
    out.lambda[k] = s;
  }
  out.U = u;
  Matrix rec = u * Matrix::diagonal(std::span<const Complex>(out.lambda)) * adjoint(u);
  out.residual = frobenius_norm(a - rec) / std::max(1.0, fro);
  return out;
}

std::vector<Complex> eigvals_general(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("eigenvalues need a square matrix");
  const std::size_t n = a.rows();
  Matrix h = a;
  // Householder reduction to upper Hessenberg
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    std::vector<Complex> x(len);
    for (std::size_t i = 0; i < len; ++i) x[i] = h(k + 1 + i, k);
    const double xn = std::sqrt(kernels::squared_norm(len, x.data()));
    if (xn == 0.0) continue;
    const Complex ph = std::abs(x[0]) > 0.0 ? x[0] / std::abs(x[0]) : Complex(1.0);
    x[0] += ph * xn;
    const double vn = std::sqrt(kernels::squared_norm(len, x.data()));
    for (auto& z : x) z /= vn;
    // h <- (I - 2vv^*) h
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += std::conj(x[i]) * h(k + 1 + i, j);
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= 2.0 * x[i] * s;
    }
    // h <- h (I - 2vv^*)
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < len; ++j) s += h(i, k + 1 + j) * x[j];
      for (std::size_t j = 0; j < len; ++j) h(i, k + 1 + j) -= 2.0 * s * std::conj(x[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  std::vector<Complex> eig(n);
  if (n == 0) return eig;
  std::size_t hi = n - 1;
  int iter = 0, total = 0;
  const int cap = 60 * static_cast<int>(n);
  std::vector<std::pair<Complex, Complex>> rots;
  while (true) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    std::size_t l = hi;
    while (l > 0) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = frobenius_norm(h);
      if (std::abs(h(l, l - 1)) <= kEps * s) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++total > cap) throw ConvergenceError("Hessenberg QR did not converge", std::abs(h(hi, hi - 1)));
    ++iter;
    Complex shift;
    if (iter % 10 == 0) {
      shift = h(hi, hi) + std::abs(h(hi, hi - 1)) * Complex(0.75, 0.4375);
    } else {
      const Complex p = h(hi - 1, hi - 1), q = h(hi - 1, hi), r = h(hi, hi - 1), d = h(hi, hi);
      const Complex half = 0.5 * (p + d);
      const Complex disc = std::sqrt(0.25 * (p - d) * (p - d) + q * r);
      const Complex m1 = half + disc, m2 = half - disc;
      shift = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }
    for (std::size_t i = l; i <= hi; ++i) h(i, i) -= shift;
    rots.clear();
    for (std::size_t k = l; k < hi; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      Complex c = 1.0, s = 0.0;
      if (r > 0.0) {
        c = x / r;
        s = y / r;
      }
      rots.emplace_back(c, s);
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex u = h(k, j), w = h(k + 1, j);
        h(k, j) = std::conj(c) * u + std::conj(s) * w;
        h(k + 1, j) = -s * u + c * w;
      }
    }
    for (std::size_t k = l; k < hi; ++k) {
      const auto [c, s] = rots[k - l];
      const std::size_t top = std::min(k + 2, hi);
      for (std::size_t i = l; i <= top; ++i) {
        const Complex u = h(i, k), w = h(i, k + 1);
        h(i, k) = c * u + s * w;
        h(i, k + 1) = -std::conj(s) * u + std::conj(c) * w;
      }
    }
    for (std::size_t i = l; i <= hi; ++i) h(i, i) += shift;
  }
  return eig;
}

}  // namespace canonica
