#include "canonica/canon_congruence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/predicates.hpp"
#include "canonica/regularization.hpp"

namespace canonica {

namespace {

// tolerance the computed cosquare must be normal to; it inherits rounding
// amplified by cond(A'), the class gate on A is the real check
constexpr double kCosquareNormalTol = 1e-6;

struct Piece {
  bool two = false;
  double value = 0.0;  // sigma or tau
  Complex mu;
  std::size_t r0 = 0, r1 = 0;  // rows of the pre-permutation transform
};

Complex mean_of(const std::vector<Complex>& lam, const std::vector<std::size_t>& idx) {
  Complex s = 0.0;
  for (auto i : idx) s += lam[i];
  return s / static_cast<double>(idx.size());
}

bool piece_less(const Piece& a, const Piece& b) {
  if (a.two != b.two) return !a.two;
  if (!a.two) return a.value > b.value;
  if (a.value != b.value) return a.value > b.value;
  const double aa = std::arg(a.mu), ab = std::arg(b.mu);
  if (aa != ab) return aa < ab;
  return std::abs(a.mu) < std::abs(b.mu);
}

}  // namespace

Matrix BlockList::assemble() const { return direct_sum(blocks); }

std::size_t BlockList::dimension() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  return n;
}

Matrix h2_block(double tau, Complex mu) { return Matrix{{0.0, tau}, {tau * mu, 0.0}}; }

Matrix cosquare(const Matrix& a, const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("cosquare needs a square matrix");
  if (!is_nonsingular(a, tol)) throw PreconditionError("cosquare of a singular matrix");
  return solve(transpose(a), a);
}

CongruencePair normalize_congruence_pair(CongruencePair p, double unit_tol) {
  const double m = std::abs(p.mu);
  if (m == 0.0) return {p.tau, Complex(0.0, 0.0)};
  if (std::abs(m - 1.0) <= unit_tol) {
    if (std::abs(p.mu + 1.0) <= unit_tol) return {p.tau, Complex(-1.0, 0.0)};
    if (p.mu.imag() < 0.0) p.mu = std::conj(p.mu);
    return p;
  }
  if (m > 1.0) return {p.tau * m, 1.0 / p.mu};
  return p;
}

void sort_congruence_form(CongruenceCanonicalForm& f) {
  std::sort(f.one_by_one.begin(), f.one_by_one.end(), std::greater<>());
  std::stable_sort(f.two_by_two.begin(), f.two_by_two.end(),
                   [](const CongruencePair& a, const CongruencePair& b) {
                     Piece x{true, a.tau, a.mu}, y{true, b.tau, b.mu};
                     return piece_less(x, y);
                   });
}

Matrix assemble_congruence(const CongruenceCanonicalForm& f) {
  std::vector<Matrix> blocks;
  for (double s : f.one_by_one) blocks.push_back(Matrix{{s}});
  for (const auto& p : f.two_by_two) blocks.push_back(h2_block(p.tau, p.mu));
  return direct_sum(blocks);
}

CongruenceCanon canon_congruence(const Matrix& a, const ToleranceConfig& tol) {
  const std::size_t n = a.rows();
  RegularSplit split = split_regular_singular(a, CongruenceMode::congruence, tol);
  const std::size_t k = split.regular_order();

  std::vector<Piece> pieces;
  Matrix g = split.transform;

  if (k > 0) {
    const Matrix& reg = *split.regular;
    const Matrix cs = solve(transpose(reg), reg);
    NormalEig ne = eig_normal(cs, tol, kCosquareNormalTol);
    double lmax = 0.0;
    for (auto z : ne.lambda) lmax = std::max(lmax, std::abs(z));
    const double rho = tol.cluster_rtol * lmax;
    auto clusters = cluster_values(ne.lambda, rho);

    std::vector<std::size_t> plus, minus;
    std::vector<std::vector<std::size_t>> open;
    for (auto& c : clusters) {
      const Complex m = mean_of(ne.lambda, c);
      const double slack = rho * static_cast<double>(c.size());
      if (std::abs(m - 1.0) <= slack)
        plus.insert(plus.end(), c.begin(), c.end());
      else if (std::abs(m + 1.0) <= slack)
        minus.insert(minus.end(), c.begin(), c.end());
      else
        open.push_back(c);
    }
    if (minus.size() % 2 != 0)
      throw NumericalError("cosquare eigenvalue -1 has odd multiplicity",
                           static_cast<double>(minus.size()));

    struct Pair {
      std::vector<std::size_t> first, second;
      Complex mu;
    };
    std::vector<Pair> pairs;
    std::vector<bool> used(open.size(), false);
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (used[i]) continue;
      const Complex c = mean_of(ne.lambda, open[i]);
      std::size_t best = open.size();
      double best_err = 0.0;
      for (std::size_t j = 0; j < open.size(); ++j) {
        if (j == i || used[j]) continue;
        const Complex d = mean_of(ne.lambda, open[j]);
        const double err = std::abs(c * d - 1.0);
        if (best == open.size() || err < best_err) {
          best = j;
          best_err = err;
        }
      }
      if (best == open.size())
        throw NumericalError("cosquare spectrum not reciprocal-paired", std::abs(c));
      const Complex d = mean_of(ne.lambda, open[best]);
      const double allow = tol.cluster_rtol * std::max(1.0, lmax) * (std::abs(c) + std::abs(d));
      if (best_err > allow || open[best].size() != open[i].size())
        throw NumericalError("cosquare spectrum not reciprocal-paired", best_err);
      used[i] = used[best] = true;
      // c leads iff it is the orbit representative
      const bool unit = std::abs(std::abs(c) - 1.0) <= rho * static_cast<double>(open[i].size());
      const bool c_first = unit ? c.imag() > 0.0 : std::abs(c) < 1.0;
      const Complex mu_c = 0.5 * (c + 1.0 / d);
      const Complex mu_d = 0.5 * (d + 1.0 / c);
      if (c_first)
        pairs.push_back({open[i], open[best], mu_c});
      else
        pairs.push_back({open[best], open[i], mu_d});
    }

    std::vector<std::size_t> order = plus;
    order.insert(order.end(), minus.begin(), minus.end());
    for (auto& p : pairs) {
      order.insert(order.end(), p.first.begin(), p.first.end());
      order.insert(order.end(), p.second.begin(), p.second.end());
    }
    const Matrix u = ne.U.select_cols(order);
    const Matrix blk = transpose(u) * reg * u;

    Matrix l(k, k);
    std::size_t at = 0;
    if (!plus.empty()) {
      const std::size_t m = plus.size();
      Matrix s = blk.block(at, at, m, m);
      s = (s + transpose(s)) * Complex(0.5);
      TakagiResult t = takagi_symmetric(s, tol);
      l.set_block(at, at, adjoint(t.V));
      for (std::size_t i = 0; i < m; ++i) pieces.push_back({false, t.sigma[i], 0.0, at + i, 0});
      at += m;
    }
    if (!minus.empty()) {
      const std::size_t m = minus.size();
      Matrix s = blk.block(at, at, m, m);
      s = (s - transpose(s)) * Complex(0.5);
      HuaResult h = hua_skew(s, tol);
      l.set_block(at, at, adjoint(h.V));
      for (std::size_t i = 0; i < m / 2; ++i)
        pieces.push_back({true, h.tau[i], Complex(-1.0, 0.0), at + 2 * i, at + 2 * i + 1});
      at += m;
    }
    for (auto& p : pairs) {
      const std::size_t m = p.first.size();
      const Matrix y = blk.block(at, at + m, m, m);
      SvdResult sv = svd(y);
      l.set_block(at, at, adjoint(sv.U));
      l.set_block(at + m, at + m, transpose(sv.V));
      const CongruencePair np = normalize_congruence_pair({1.0, p.mu}, rho);
      for (std::size_t i = 0; i < m; ++i)
        pieces.push_back({true, sv.sigma[i], np.mu, at + i, at + m + i});
      at += 2 * m;
    }
    Matrix lu = l * transpose(u);
    Matrix full = Matrix::identity(n);
    full.set_block(0, 0, lu);
    g = full * g;
  }

  for (std::size_t i = 0; i < split.singular_sigmas.size(); ++i)
    pieces.push_back({true, split.singular_sigmas[i], 0.0, k + 2 * i, k + 2 * i + 1});
  const std::size_t zbase = k + 2 * split.singular_sigmas.size();
  for (std::size_t i = 0; i < split.zero_count; ++i) pieces.push_back({false, 0.0, 0.0, zbase + i, 0});

  std::stable_sort(pieces.begin(), pieces.end(), piece_less);
  CongruenceCanon out;
  std::vector<std::size_t> rows;
  for (const auto& p : pieces) {
    rows.push_back(p.r0);
    if (p.two) {
      rows.push_back(p.r1);
      out.form.two_by_two.push_back({p.value, p.mu});
    } else {
      out.form.one_by_one.push_back(p.value);
    }
  }
  // 1x1 pieces sort first, matching assemble_congruence
  out.transform = g.select_rows(rows);
  out.residual = relative_residual(out.transform * a * transpose(out.transform),
                                   assemble_congruence(out.form));
  return out;
}

CongruenceCanonicalForm canon_conjugate_normal(const Matrix& a, const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("matrix must be square");
  const double res = conjugate_normal_residual(a);
  if (res > tol.residual_rtol) throw PreconditionError("matrix is not conjugate normal", res);
  const std::size_t n = a.rows();
  CongruenceCanonicalForm f;
  if (n == 0) return f;
  const std::size_t zeros = n - rank(a, tol);
  NormalEig ne = eig_normal(conj(a) * a, tol, kCosquareNormalTol);
  std::vector<Complex> lam = ne.lambda;
  std::stable_sort(lam.begin(), lam.end(),
                   [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  double lmax = 0.0;
  for (auto z : lam) lmax = std::max(lmax, std::abs(z));
  const double rho = tol.cluster_rtol * std::max(lmax, 1e-300);

  std::vector<double> negatives;
  std::size_t upper = 0, lower = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < zeros) {
      f.one_by_one.push_back(0.0);
      continue;
    }
    const Complex z = lam[i];
    if (std::abs(z.imag()) <= rho) {
      if (z.real() > 0.0)
        f.one_by_one.push_back(std::sqrt(z.real()));
      else
        negatives.push_back(-z.real());
    } else if (z.imag() > 0.0) {
      ++upper;
      f.two_by_two.push_back({std::sqrt(std::abs(z)), z / std::abs(z)});
    } else {
      ++lower;
    }
  }
  if (upper != lower || negatives.size() % 2 != 0)
    throw NumericalError("spectrum of conj(A)A is not conjugate-paired",
                         static_cast<double>(upper) - static_cast<double>(lower));
  std::sort(negatives.begin(), negatives.end());
  for (std::size_t i = 0; i < negatives.size(); i += 2)
    f.two_by_two.push_back({std::sqrt(0.5 * (negatives[i] + negatives[i + 1])), Complex(-1.0, 0.0)});
  sort_congruence_form(f);
  return f;
}

Matrix real_orthogonal_block(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return Matrix{{c, s}, {-s, c}};
}

Matrix hermitian_unitary_block(double theta) {
  return Matrix{{0.0, std::polar(1.0, -theta / 2.0)}, {std::polar(1.0, theta / 2.0), 0.0}};
}

UnitaryCanon canon_unitary(const Matrix& u, UnitaryStyle style, const ToleranceConfig& tol) {
  if (!u.is_square()) throw DimensionError("matrix must be square");
  const double res = unitary_residual(u);
  if (res > tol.residual_rtol) throw PreconditionError("matrix is not unitary", res);
  const std::size_t n = u.rows();
  CongruenceCanon cc = canon_congruence(u, tol);
  UnitaryCanon out;
  Matrix s = Matrix::identity(n);
  const std::size_t ones = cc.form.one_by_one.size();
  for (std::size_t i = 0; i < ones; ++i) out.blocks.blocks.push_back(Matrix{{1.0}});
  std::size_t at = ones;
  for (const auto& p : cc.form.two_by_two) {
    const double theta = std::abs(std::arg(p.mu));
    out.theta.push_back(theta);
    switch (style) {
      case UnitaryStyle::h2:
        out.blocks.blocks.push_back(h2_block(1.0, std::polar(1.0, theta)));
        break;
      case UnitaryStyle::hermitian_unitary: {
        out.blocks.blocks.push_back(hermitian_unitary_block(theta));
        const Complex ph = std::polar(1.0, -theta / 4.0);
        s(at, at) = ph;
        s(at + 1, at + 1) = ph;
        break;
      }
      case UnitaryStyle::real_orthogonal: {
        const Matrix q = real_orthogonal_block(theta);
        out.blocks.blocks.push_back(q);
        // T2 Q T2^T = H2  =>  T2^* H2 conj(T2) = Q
        CongruenceCanon qc = canon_congruence(q, tol);
        s.set_block(at, at, adjoint(qc.transform));
        break;
      }
    }
    at += 2;
  }
  out.transform = s * cc.transform;
  out.residual = relative_residual(out.transform * u * transpose(out.transform), out.blocks.assemble());
  return out;
}

CongruenceCanonicalForm canon_coninvolutory(const Matrix& a, const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("matrix must be square");
  const double res = coninvolutory_residual(a);
  if (res > tol.residual_rtol) throw PreconditionError("matrix is not coninvolutory", res);
  const std::size_t n = a.rows();
  CongruenceCanonicalForm f;
  if (n == 0) return f;
  auto sigma = singular_values(a);
  const double cut = 1.0 + tol.cluster_rtol * sigma.front();
  std::size_t q = 0;
  for (double s : sigma)
    if (s > cut) {
      ++q;
      f.two_by_two.push_back({s, Complex(1.0 / (s * s), 0.0)});
    }
  f.one_by_one.assign(n - 2 * q, 1.0);
  sort_congruence_form(f);
  return f;
}

CongruenceCanon canon_hermitian_cosquare(const Matrix& a, const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("matrix must be square");
  const double res = conj_square_hermitian_residual(a);
  if (res > tol.residual_rtol) throw PreconditionError("conj(A)A is not Hermitian", res);
  CongruenceCanon cc = canon_congruence(a, tol);
  for (auto& p : cc.form.two_by_two) {
    if (std::abs(p.mu.imag()) > tol.cluster_rtol * std::max(1.0, std::abs(p.mu)) * 10.0)
      throw NumericalError("non-real block parameter for a Hermitian cosquare",
                           std::abs(p.mu.imag()));
    p.mu = Complex(p.mu.real(), 0.0);
  }
  cc.residual = relative_residual(cc.transform * a * transpose(cc.transform),
                                  assemble_congruence(cc.form));
  return cc;
}

}  // namespace canonica
