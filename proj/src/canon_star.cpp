#include "canonica/canon_star.hpp"

#include <algorithm>
#include <cmath>

#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/predicates.hpp"
#include "canonica/regularization.hpp"

namespace canonica {

namespace {

constexpr double kCosquareNormalTol = 1e-6;

struct Piece {
  bool two = false;
  Complex value;  // lambda for 1x1, tau (real) for 2x2
  Complex mu;
  std::size_t r0 = 0, r1 = 0;
};

Complex mean_of(const std::vector<Complex>& lam, const std::vector<std::size_t>& idx) {
  Complex s = 0.0;
  for (auto i : idx) s += lam[i];
  return s / static_cast<double>(idx.size());
}

bool one_less(Complex a, Complex b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  return std::arg(a) < std::arg(b);
}

bool pair_less(const StarPair& a, const StarPair& b) {
  if (a.tau != b.tau) return a.tau > b.tau;
  const double ma = std::abs(a.mu), mb = std::abs(b.mu);
  if (ma != mb) return ma > mb;
  return std::arg(a.mu) < std::arg(b.mu);
}

bool piece_less(const Piece& a, const Piece& b) {
  if (a.two != b.two) return !a.two;
  if (!a.two) return one_less(a.value, b.value);
  return pair_less({a.value.real(), a.mu}, {b.value.real(), b.mu});
}

// X with X (tau H2(mu)) X^* = triangular_block(to_triangular(p))
Matrix h2_to_triangular(const StarPair& p) {
  const TriangularPair t = to_triangular(p);
  const Complex x = p.tau > 0.0 ? t.nu / p.tau : Complex(0.0);
  const double nrm = std::sqrt(1.0 + std::norm(x));
  Matrix q{{1.0 / nrm, -std::conj(x) / nrm}, {x / nrm, 1.0 / nrm}};
  const Matrix tri = adjoint(q) * h2_block(p.tau, p.mu) * q;
  const Complex e = tri(0, 1);
  if (std::abs(e) > 0.0) {
    const Complex z = std::conj(e) / std::abs(e);
    q(0, 1) *= z;
    q(1, 1) *= z;
  }
  return adjoint(q);
}

void require_square(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("matrix must be square");
}

}  // namespace

Complex sqrt_dplus(Complex z) {
  Complex s = std::sqrt(z);
  if (s.real() < 0.0 || (s.real() == 0.0 && s.imag() < 0.0)) s = -s;
  return s;
}

TriangularPair to_triangular(const StarPair& p) {
  return {p.tau * sqrt_dplus(p.mu), p.tau * (1.0 - std::abs(p.mu))};
}

StarPair from_triangular(const TriangularPair& t) {
  const double m = std::abs(t.nu);
  if (m == 0.0) return {t.r, Complex(0.0)};
  const double k = t.r / m;
  const double s = 2.0 / (k + std::sqrt(k * k + 4.0));  // sqrt|mu|
  const double tau = std::sqrt((2.0 * m * m + t.r * t.r) / (1.0 + s * s * s * s));
  const Complex w = t.nu / tau;
  return {tau, w * w};
}

Matrix triangular_block(const TriangularPair& t) { return Matrix{{t.nu, t.r}, {0.0, -t.nu}}; }

Matrix star_pair_block(const StarPair& p, StarRepresentation rep) {
  return rep == StarRepresentation::h2 ? h2_block(p.tau, p.mu) : triangular_block(to_triangular(p));
}

Matrix star_cosquare(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  if (!is_nonsingular(a, tol)) throw PreconditionError("*cosquare of a singular matrix");
  return solve(adjoint(a), a);
}

void sort_star_form(StarCanonicalForm& f) {
  std::stable_sort(f.one_by_one.begin(), f.one_by_one.end(), one_less);
  std::stable_sort(f.two_by_two.begin(), f.two_by_two.end(), pair_less);
}

Matrix assemble_star(const StarCanonicalForm& f) {
  std::vector<Matrix> blocks;
  for (Complex l : f.one_by_one) blocks.push_back(Matrix{{l}});
  for (const auto& p : f.two_by_two) blocks.push_back(star_pair_block(p, f.representation));
  return direct_sum(blocks);
}

StarCanon canon_star(const Matrix& a, const ToleranceConfig& tol, StarRepresentation rep) {
  const std::size_t n = a.rows();
  RegularSplit split = split_regular_singular(a, CongruenceMode::star, tol);
  const std::size_t k = split.regular_order();

  std::vector<Piece> pieces;
  Matrix g = split.transform;

  if (k > 0) {
    const Matrix& reg = *split.regular;
    const Matrix cs = solve(adjoint(reg), reg);
    NormalEig ne = eig_normal(cs, tol, kCosquareNormalTol);
    double lmax = 0.0;
    for (auto z : ne.lambda) lmax = std::max(lmax, std::abs(z));
    const double rho = tol.cluster_rtol * lmax;
    auto clusters = cluster_values(ne.lambda, rho);

    struct Unit {
      std::vector<std::size_t> idx;
      Complex lambda;
    };
    std::vector<Unit> units;
    std::vector<std::vector<std::size_t>> inner, outer;
    for (auto& c : clusters) {
      const Complex m = mean_of(ne.lambda, c);
      const double slack = tol.cluster_rtol * static_cast<double>(c.size());
      if (std::abs(std::abs(m) - 1.0) <= slack)
        units.push_back({c, m / std::abs(m)});
      else if (std::abs(m) < 1.0)
        inner.push_back(c);
      else
        outer.push_back(c);
    }

    struct Pair {
      std::vector<std::size_t> first, second;
      Complex mu;
    };
    std::vector<Pair> pairs;
    std::vector<bool> used(outer.size(), false);
    for (auto& c_idx : inner) {
      const Complex c = mean_of(ne.lambda, c_idx);
      std::size_t best = outer.size();
      double best_err = 0.0;
      for (std::size_t j = 0; j < outer.size(); ++j) {
        if (used[j]) continue;
        const double err = std::abs(std::conj(c) * mean_of(ne.lambda, outer[j]) - 1.0);
        if (best == outer.size() || err < best_err) {
          best = j;
          best_err = err;
        }
      }
      if (best == outer.size())
        throw NumericalError("spectrum not conjugate-reciprocal-paired", std::abs(c));
      const Complex d = mean_of(ne.lambda, outer[best]);
      const double allow = tol.cluster_rtol * std::max(1.0, lmax) * (std::abs(c) + std::abs(d));
      if (best_err > allow || outer[best].size() != c_idx.size())
        throw NumericalError("spectrum not conjugate-reciprocal-paired", best_err);
      used[best] = true;
      pairs.push_back({c_idx, outer[best], 0.5 * (c + 1.0 / std::conj(d))});
    }
    for (bool u : used)
      if (!u) throw NumericalError("spectrum not conjugate-reciprocal-paired", 1.0);

    std::vector<std::size_t> order;
    for (auto& u : units) order.insert(order.end(), u.idx.begin(), u.idx.end());
    for (auto& p : pairs) {
      order.insert(order.end(), p.first.begin(), p.first.end());
      order.insert(order.end(), p.second.begin(), p.second.end());
    }
    const Matrix u = ne.U.select_cols(order);
    const Matrix uh = adjoint(u);
    const Matrix blk = uh * reg * u;

    Matrix l(k, k);
    std::size_t at = 0;
    for (auto& un : units) {
      const std::size_t m = un.idx.size();
      const Complex alpha = sqrt_dplus(un.lambda);
      Matrix h = blk.block(at, at, m, m) * std::conj(alpha);
      h = (h + adjoint(h)) * Complex(0.5);
      HermitianEig he = eigh(h);
      l.set_block(at, at, adjoint(he.U));
      for (std::size_t i = 0; i < m; ++i) pieces.push_back({false, alpha * he.w[i], 0.0, at + i, 0});
      at += m;
    }
    for (auto& p : pairs) {
      const std::size_t m = p.first.size();
      const Matrix y = blk.block(at, at + m, m, m);
      SvdResult sv = svd(y);
      l.set_block(at, at, adjoint(sv.U));
      l.set_block(at + m, at + m, adjoint(sv.V));
      for (std::size_t i = 0; i < m; ++i)
        pieces.push_back({true, sv.sigma[i], p.mu, at + i, at + m + i});
      at += 2 * m;
    }
    Matrix full = Matrix::identity(n);
    full.set_block(0, 0, l * uh);
    g = full * g;
  }

  for (std::size_t i = 0; i < split.singular_sigmas.size(); ++i)
    pieces.push_back({true, split.singular_sigmas[i], 0.0, k + 2 * i, k + 2 * i + 1});
  const std::size_t zbase = k + 2 * split.singular_sigmas.size();
  for (std::size_t i = 0; i < split.zero_count; ++i) pieces.push_back({false, 0.0, 0.0, zbase + i, 0});

  std::stable_sort(pieces.begin(), pieces.end(), piece_less);
  StarCanon out;
  out.form.representation = rep;
  std::vector<std::size_t> rows;
  for (const auto& p : pieces) {
    rows.push_back(p.r0);
    if (p.two) {
      rows.push_back(p.r1);
      out.form.two_by_two.push_back({p.value.real(), p.mu});
    } else {
      out.form.one_by_one.push_back(p.value);
    }
  }
  out.transform = g.select_rows(rows);
  if (rep == StarRepresentation::triangular) {
    Matrix s = Matrix::identity(n);
    std::size_t at = out.form.one_by_one.size();
    for (const auto& p : out.form.two_by_two) {
      s.set_block(at, at, h2_to_triangular(p));
      at += 2;
    }
    out.transform = s * out.transform;
  }
  out.residual = relative_residual(out.transform * a * adjoint(out.transform), assemble_star(out.form));
  return out;
}

bool pearcy_equal_2x2(const Matrix& x, const Matrix& y, const ToleranceConfig& tol) {
  if (x.rows() != 2 || x.cols() != 2 || y.rows() != 2 || y.cols() != 2)
    throw DimensionError("Pearcy criterion needs two 2x2 matrices");
  auto close = [&](Complex p, Complex q) {
    return std::abs(p - q) <= tol.residual_rtol * std::max({1.0, std::abs(p), std::abs(q)});
  };
  return close(trace(x), trace(y)) && close(trace(x * x), trace(y * y)) &&
         close(trace(adjoint(x) * x), trace(adjoint(y) * y));
}

InvolutionCanon canon_involution(const Matrix& a, const ToleranceConfig& tol,
                                 InvolutionVariant variant) {
  require_square(a);
  const double res = involutory_residual(a);
  if (res > tol.residual_rtol) throw PreconditionError("matrix is not an involution", res);
  const std::size_t n = a.rows();
  InvolutionCanon out;
  if (n == 0) return out;
  const double pr = std::round((static_cast<double>(n) + trace(a).real()) / 2.0);
  out.p = static_cast<std::size_t>(std::clamp(pr, 0.0, static_cast<double>(n)));
  const auto sigma = singular_values(a);
  const double cut = 1.0 + tol.cluster_rtol * sigma.front();
  for (double s : sigma)
    if (s > cut) out.sigma.push_back(s);
  const std::size_t q = out.sigma.size();
  if (q > out.p || q > n - out.p)
    throw NumericalError("involution invariants are inconsistent", static_cast<double>(q));
  for (std::size_t i = 0; i < out.p - q; ++i) out.blocks.blocks.push_back(Matrix{{1.0}});
  for (std::size_t i = 0; i < n - out.p - q; ++i) out.blocks.blocks.push_back(Matrix{{-1.0}});
  for (double s : out.sigma) {
    if (variant == InvolutionVariant::antidiag)
      out.blocks.blocks.push_back(Matrix{{0.0, 1.0 / s}, {s, 0.0}});
    else
      out.blocks.blocks.push_back(Matrix{{1.0, s - 1.0 / s}, {0.0, -1.0}});
  }
  return out;
}

StarCanon canon_hermitian_square(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  const double res = hermitian_square_residual(a);
  if (res > tol.residual_rtol) throw PreconditionError("A^2 is not Hermitian", res);
  StarCanon sc = canon_star(a, tol);
  const double slack = 10.0 * tol.cluster_rtol;
  for (auto& l : sc.form.one_by_one) {
    const double m = std::max(1.0, std::abs(l));
    if (std::abs(l.imag()) <= slack * m)
      l = Complex(l.real(), 0.0);
    else if (std::abs(l.real()) <= slack * m)
      l = Complex(0.0, l.imag());
    else
      throw NumericalError("1x1 block is neither real nor imaginary", std::min(std::abs(l.real()), std::abs(l.imag())));
  }
  for (auto& p : sc.form.two_by_two) {
    if (std::abs(p.mu.imag()) > slack)
      throw NumericalError("non-real block parameter for a Hermitian square", std::abs(p.mu.imag()));
    p.mu = Complex(p.mu.real(), 0.0);
  }
  sc.residual = relative_residual(sc.transform * a * adjoint(sc.transform), assemble_star(sc.form));
  return sc;
}

LambdaProjectionCanon canon_lambda_projection(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  const std::size_t n = a.rows();
  LambdaProjectionCanon out;
  out.lambda = lambda_projection_candidate(a, tol);
  const double res = relative_residual(a * a, out.lambda * a);
  if (res > tol.residual_rtol) throw PreconditionError("matrix is not a lambda-projection", res);
  if (n == 0) return out;

  const auto sig = singular_values(a);
  out.m1 = n - numerical_rank(sig, n, n, tol);
  const double lam = std::abs(out.lambda);
  const double cut = lam + tol.cluster_rtol * std::max(1.0, sig.front());
  for (double s : sig)
    if (s > cut) out.tau.push_back(s);
  const std::size_t m2 = out.tau.size();
  if (m2 > out.m1 || out.m1 + m2 > n)
    throw NumericalError("lambda-projection block counts are inconsistent", static_cast<double>(m2));

  for (std::size_t i = 0; i < n - out.m1 - m2; ++i) out.blocks.blocks.push_back(Matrix{{out.lambda}});
  for (double t : out.tau)
    out.blocks.blocks.push_back(Matrix{{out.lambda, std::sqrt(std::max(0.0, t * t - lam * lam))}, {0.0, 0.0}});
  if (out.m1 > m2) out.blocks.blocks.emplace_back(out.m1 - m2, out.m1 - m2);

  const std::size_t kk = std::min(out.m1, n - out.m1);
  const auto sig2 = singular_values(a - out.lambda * Matrix::identity(n));
  double worst = 0.0;
  for (std::size_t i = 0; i < kk; ++i) worst = std::max(worst, std::abs(sig[i] - sig2[i]));
  out.singular_value_residual = worst / std::max(1.0, sig.front());
  return out;
}

namespace {

Complex dot(const Matrix& x, const Matrix& y) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x.data()[i]) * y.data()[i];
  return s;
}

}  // namespace

QuadraticCanon canon_quadratic(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  const std::size_t n = a.rows();
  if (n == 0) throw PreconditionError("empty matrix has no quadratic minimal polynomial");
  const Matrix id = Matrix::identity(n);
  const Complex tr = trace(a);
  const double nn = static_cast<double>(n);
  const double scalar_res = relative_residual(a, (tr / nn) * id);
  if (scalar_res <= tol.residual_rtol)
    throw PreconditionError("scalar matrix: minimal polynomial has degree one", scalar_res);

  // least squares A^2 ~ c1 A + e I
  const Matrix a2 = a * a;
  const Complex g00 = dot(a, a), g01 = std::conj(tr), g10 = tr, g11 = nn;
  const Complex b0 = dot(a, a2), b1 = trace(a2);
  const Complex det = g00 * g11 - g01 * g10;
  if (std::abs(det) == 0.0) throw NumericalError("degenerate quadratic fit", 0.0);
  const Complex c1 = (b0 * g11 - g01 * b1) / det;
  const Complex e = (g00 * b1 - g10 * b0) / det;

  QuadraticCanon out;
  out.fit_residual = relative_residual(a2, c1 * a + e * id);
  if (out.fit_residual > tol.residual_rtol)
    throw PreconditionError("minimal polynomial degree exceeds two", out.fit_residual);

  const Complex disc = std::sqrt(c1 * c1 + 4.0 * e);
  Complex l1 = 0.5 * (c1 + disc), l2 = 0.5 * (c1 - disc);
  auto before = [&](Complex x, Complex y) {
    const double slack = tol.cluster_rtol * std::max({1.0, std::abs(x), std::abs(y)});
    if (std::abs(std::abs(x) - std::abs(y)) > slack) return std::abs(x) > std::abs(y);
    if (std::abs(x.real() - y.real()) > slack) return x.real() > y.real();
    return x.imag() > y.imag();
  };
  if (before(l2, l1)) std::swap(l1, l2);
  const auto sig = singular_values(a);
  const bool equal_roots = std::abs(l1 - l2) <= tol.cluster_rtol * std::max(1.0, std::abs(l1));
  if (equal_roots) l1 = l2 = 0.5 * (l1 + l2);

  std::size_t k1 = n, k2 = 0;
  if (!equal_roots) {
    const double kr = std::round(((tr - nn * l2) / (l1 - l2)).real());
    k1 = static_cast<std::size_t>(std::clamp(kr, 0.0, nn));
    k2 = n - k1;
  }
  const double cut = std::abs(l1) + tol.cluster_rtol * std::max(1.0, sig.front());
  for (double s : sig)
    if (s > cut) out.sigma.push_back(s);
  const std::size_t m = out.sigma.size();
  std::size_t c1n, c2n;
  if (equal_roots) {
    if (2 * m > n) throw NumericalError("quadratic block counts are inconsistent", static_cast<double>(m));
    c1n = n - 2 * m;
    c2n = 0;
  } else {
    if (m > k1 || m > k2)
      throw NumericalError("quadratic block counts are inconsistent", static_cast<double>(m));
    c1n = k1 - m;
    c2n = k2 - m;
  }
  out.lambda1 = l1;
  out.lambda2 = l2;
  out.mult1 = equal_roots ? n : k1;

  const double a1 = std::abs(l1), a2m = std::abs(l2), p = a1 * a2m;
  for (std::size_t i = 0; i < c1n; ++i) out.blocks.blocks.push_back(Matrix{{l1}});
  for (double s : out.sigma) {
    const double g2 = s * s + p * p / (s * s) - a1 * a1 - a2m * a2m;
    const double gam = std::sqrt(std::max(0.0, g2));
    out.gamma.push_back(gam);
    out.blocks.blocks.push_back(Matrix{{l1, gam}, {0.0, l2}});
  }
  for (std::size_t i = 0; i < c2n; ++i) out.blocks.blocks.push_back(Matrix{{l2}});

  auto& pred = out.predicted_singular_values;
  for (double s : out.sigma) {
    pred.push_back(s);
    pred.push_back(p / s);
  }
  pred.insert(pred.end(), c1n, a1);
  pred.insert(pred.end(), c2n, a2m);
  std::sort(pred.begin(), pred.end(), std::greater<>());
  return out;
}

ShiftedQuadraticCanon canon_shifted_quadratic_normal(const Matrix& a, Complex shift, Complex b,
                                                     const ToleranceConfig& tol) {
  require_square(a);
  const std::size_t n = a.rows();
  const Matrix id = Matrix::identity(n);
  const Matrix nm = a * a - (2.0 * shift) * a + b * id;
  const double res = normal_residual(nm);
  if (res > tol.residual_rtol) throw PreconditionError("A^2 - 2aA + bI is not normal", res);
  StarCanon sc = canon_star(a - shift * id, tol, StarRepresentation::triangular);
  ShiftedQuadraticCanon out;
  out.a = shift;
  for (Complex l : sc.form.one_by_one) {
    out.one_by_one.push_back(l + shift);
    out.blocks.blocks.push_back(Matrix{{l + shift}});
  }
  for (const auto& p : sc.form.two_by_two) {
    const TriangularPair t = to_triangular(p);
    out.two_by_two.push_back(t);
    out.blocks.blocks.push_back(Matrix{{shift + t.nu, t.r}, {0.0, shift - t.nu}});
  }
  out.transform = sc.transform;
  out.residual = relative_residual(out.transform * a * adjoint(out.transform), out.blocks.assemble());
  return out;
}

}  // namespace canonica
