#include <algorithm>
#include <cmath>

#include "canonica/canon_congruence.hpp"
#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/predicates.hpp"

namespace canonica {

namespace {

ConditionCheck check(std::string name, double residual, const ToleranceConfig& tol,
                     bool applicable = true) {
  return ConditionCheck{std::move(name), residual, residual <= tol.residual_rtol, applicable};
}

ConditionCheck not_evaluated(std::string name) {
  return ConditionCheck{std::move(name), -1.0, false, false};
}

double hermitian_residual(const Matrix& m) { return relative_residual(m, adjoint(m)); }

Matrix star_cosquare_of(const Matrix& a) { return solve(adjoint(a), a); }
Matrix cosquare_of(const Matrix& a) { return solve(transpose(a), a); }

// sigma clusters (including the zero cluster) as [begin, end) ranges of the SVD order
std::vector<std::pair<std::size_t, std::size_t>> sigma_clusters(const std::vector<double>& s,
                                                                const ToleranceConfig& tol) {
  std::vector<std::pair<std::size_t, std::size_t>> g;
  if (s.empty()) return g;
  const std::size_t n = s.size();
  const std::size_t r = numerical_rank(s, n, n, tol);
  const double radius = tol.cluster_rtol * s.front();
  std::size_t b = 0;
  for (std::size_t i = 1; i <= r; ++i)
    if (i == r || s[i - 1] - s[i] > radius) {
      g.emplace_back(b, i);
      b = i;
    }
  if (r < n) g.emplace_back(r, n);
  return g;
}

// unitary-congruence block structure sigma_1 W_1 + ... (e) and its real
// orthogonal rendering (f)
std::pair<double, double> conjugate_normal_block_residuals(const Matrix& a,
                                                           const ToleranceConfig& tol) {
  const std::size_t n = a.rows();
  SvdResult s = svd(a);
  const Matrix m = adjoint(s.U) * a * conj(s.U);
  const auto groups = sigma_clusters(s.sigma, tol);
  const double scale = std::max(1.0, frobenius_norm(a));

  Matrix diag(n, n);
  for (auto [b, e] : groups) diag.set_block(b, b, m.block(b, b, e - b, e - b));
  const double e_res = frobenius_norm(m - diag) / scale;

  const std::size_t r = numerical_rank(s.sigma, n, n, tol);
  Matrix t = Matrix::identity(n);
  Matrix z(n, n);
  for (auto [b, e] : groups) {
    if (b >= r) continue;
    double mean = 0.0;
    for (std::size_t i = b; i < e; ++i) mean += s.sigma[i];
    mean /= static_cast<double>(e - b);
    const Matrix w = m.block(b, b, e - b, e - b) * Complex(1.0 / mean);
    try {
      UnitaryCanon uc = canon_unitary(w, UnitaryStyle::real_orthogonal, tol);
      t.set_block(b, b, uc.transform);
      z.set_block(b, b, uc.blocks.assemble() * Complex(mean));
    } catch (const PreconditionError& err) {
      return {e_res, std::max(1.0, err.residual())};
    } catch (const NumericalError&) {
      return {e_res, 1.0};
    }
  }
  const Matrix reduced = t * m * transpose(t);
  double f_res = relative_residual(reduced, z);
  f_res = std::max(f_res, relative_residual(z, conj(z)));
  f_res = std::max(f_res, relative_residual(z * transpose(z), transpose(z) * z));
  return {e_res, f_res};
}

}  // namespace

CharacterizationReport verify_characterizations(const Matrix& a, CharacterizationSet which,
                                                const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("matrix must be square");
  CharacterizationReport rep;
  rep.which = which;
  auto& c = rep.conditions;
  const bool nonsing = a.rows() == 0 || is_nonsingular(a, tol);

  switch (which) {
    case CharacterizationSet::congruence_normal_idents: {
      c.push_back(check("a", congruence_normal_residual(a), tol));
      const Matrix ab = conj(a);
      c.push_back(check("b", relative_residual(a * ab * transpose(a), transpose(a) * ab * a), tol));
      if (nonsing)
        c.push_back(check("c", normal_residual(cosquare_of(a)), tol));
      else
        c.push_back(not_evaluated("c"));
      break;
    }
    case CharacterizationSet::squared_normal_idents: {
      c.push_back(check("a", squared_normal_residual(a), tol));
      const Matrix a2 = a * a;
      c.push_back(check("b", relative_residual(a2 * adjoint(a), adjoint(a) * a2), tol));
      if (nonsing)
        c.push_back(check("c", normal_residual(star_cosquare_of(a)), tol));
      else
        c.push_back(not_evaluated("c"));
      break;
    }
    case CharacterizationSet::conjugate_normal_afd: {
      const Matrix sym = (a + transpose(a)) * Complex(0.5);
      const Matrix skw = (a - transpose(a)) * Complex(0.5);
      c.push_back(check("a", relative_residual(sym * conj(skw), skw * conj(sym)), tol));
      c.push_back(check("b", conjugate_normal_residual(a), tol));
      const Matrix p = polar(a, PolarSide::left).Q;
      const Matrix q = polar(a, PolarSide::right).Q;
      c.push_back(check("c", relative_residual(q, conj(p)), tol, nonsing));
      c.push_back(check("d", relative_residual(p * a, a * conj(p)), tol, nonsing));
      auto [e_res, f_res] = conjugate_normal_block_residuals(a, tol);
      c.push_back(check("e", e_res, tol));
      c.push_back(check("f", f_res, tol));
      break;
    }
    case CharacterizationSet::congruence_normal_afd: {
      const Matrix sym = (a + transpose(a)) * Complex(0.5);
      const Matrix skw = (a - transpose(a)) * Complex(0.5);
      const Matrix x = conj(sym) * sym + conj(skw) * skw;
      const Matrix y = conj(sym) * skw + conj(skw) * sym;
      c.push_back(check("a", relative_residual(x * y, y * x), tol));
      c.push_back(check("b", congruence_normal_residual(a), tol));
      const PolarResult left = polar(a, PolarSide::left);
      const PolarResult right = polar(a, PolarSide::right);
      const Matrix pb = conj(left.Q);
      const Matrix& q = right.Q;
      c.push_back(check("c", relative_residual(a * pb, conj(q) * a), tol, nonsing));
      const Matrix uu = conj(right.W) * right.W;
      double d = relative_residual(pb * q, q * pb);
      d = std::max(d, relative_residual(pb * uu, uu * pb));
      d = std::max(d, relative_residual(q * uu, uu * q));
      c.push_back(check("d", d, tol, nonsing));
      break;
    }
  }
  rep.all_agree = true;
  const ConditionCheck* first = nullptr;
  for (const auto& cond : c) {
    if (!cond.applicable) continue;
    if (!first)
      first = &cond;
    else if (cond.holds != first->holds)
      rep.all_agree = false;
  }
  return rep;
}

std::vector<DualityCheck> verify_bar_blocks(const Matrix& a, const ToleranceConfig& tol) {
  const Matrix big = bar_double(a);
  const double t = tol.residual_rtol;
  std::vector<DualityCheck> out;
  auto add = [&](std::string name, double lhs, double rhs) {
    out.push_back(DualityCheck{std::move(name), lhs <= t, rhs <= t, lhs, rhs});
  };
  add("a", squared_normal_residual(a), congruence_normal_residual(big));
  add("b", congruence_normal_residual(a), normal_residual(big * big));
  add("c", normal_residual(a), conjugate_normal_residual(big));
  add("d", conjugate_normal_residual(a), normal_residual(big));
  {
    const Matrix bb = conj(big);
    const Matrix a2 = a * a;
    add("e", relative_residual(big * bb * transpose(big), transpose(big) * bb * big),
        relative_residual(adjoint(a) * a2, a2 * adjoint(a)));
  }
  {
    const Matrix b2 = big * big;
    const Matrix ab = conj(a);
    add("f", relative_residual(adjoint(big) * b2, b2 * adjoint(big)),
        relative_residual(a * ab * transpose(a), transpose(a) * ab * a));
  }
  if (a.rows() > 0 && is_nonsingular(a, tol)) {
    const Matrix cs = cosquare_of(a);
    const Matrix scs = star_cosquare_of(a);
    const Matrix big_cs = cosquare_of(big);
    const Matrix big_scs = star_cosquare_of(big);
    add("g.normal", normal_residual(cs), normal_residual(big_scs));
    add("g.hermitian", hermitian_residual(cs), hermitian_residual(big_scs));
    add("g.unitary", unitary_residual(cs), unitary_residual(big_scs));
    add("h.normal", normal_residual(scs), normal_residual(big_cs));
    add("h.hermitian", hermitian_residual(scs), hermitian_residual(big_cs));
    add("h.unitary", unitary_residual(scs), unitary_residual(big_cs));
  }
  return out;
}

}  // namespace canonica
