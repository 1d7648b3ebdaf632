#include "canonica/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/predicates.hpp"

namespace canonica {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string fmt(Complex z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

template <class T>
bool match_lists(const std::vector<T>& x, const std::vector<T>& y, const char* kind,
                 const std::function<double(const T&, const T&)>& dist,
                 const std::function<std::string(const T&)>& show, double match_tol,
                 std::vector<BlockMatch>* report) {
  bool ok = x.size() == y.size();
  std::vector<bool> used(y.size(), false);
  for (const auto& a : x) {
    std::size_t best = y.size();
    double best_d = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (used[j]) continue;
      const double d = dist(a, y[j]);
      if (best == y.size() || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    const bool hit = best < y.size() && best_d <= match_tol;
    if (hit) used[best] = true;
    ok = ok && hit;
    if (report)
      report->push_back({kind, show(a), best < y.size() ? show(y[best]) : "", hit ? best_d : -1.0, hit});
  }
  if (report)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!used[j]) report->push_back({kind, "", show(y[j]), -1.0, false});
  return ok;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }
double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

void require_same(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || !b.is_square()) throw DimensionError("matrices must be square");
  if (a.rows() != b.rows()) throw DimensionError("matrices differ in size");
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::not_equivalent: return "not_equivalent";
    case Verdict::unsupported: return "unsupported";
  }
  return "unsupported";
}

bool congruence_forms_equal(const CongruenceCanonicalForm& x, const CongruenceCanonicalForm& y,
                            double match_tol, std::vector<BlockMatch>* report) {
  const bool a = match_lists<double>(
      x.one_by_one, y.one_by_one, "1x1", [](const double& p, const double& q) { return rel(p, q); },
      [](const double& p) { return fmt(p); }, match_tol, report);
  const bool b = match_lists<CongruencePair>(
      x.two_by_two, y.two_by_two, "2x2",
      [](const CongruencePair& p, const CongruencePair& q) {
        return std::max(rel(p.tau, q.tau), std::abs(p.mu - q.mu));
      },
      [](const CongruencePair& p) { return "tau=" + fmt(p.tau) + " mu=" + fmt(p.mu); }, match_tol,
      report);
  return a && b;
}

bool star_forms_equal(const StarCanonicalForm& x, const StarCanonicalForm& y, double match_tol,
                      std::vector<BlockMatch>* report) {
  const bool a = match_lists<Complex>(
      x.one_by_one, y.one_by_one, "1x1", [](const Complex& p, const Complex& q) { return rel(p, q); },
      [](const Complex& p) { return fmt(p); }, match_tol, report);
  const bool b = match_lists<StarPair>(
      x.two_by_two, y.two_by_two, "2x2",
      [](const StarPair& p, const StarPair& q) {
        return std::max(rel(p.tau, q.tau), std::abs(p.mu - q.mu));
      },
      [](const StarPair& p) { return "tau=" + fmt(p.tau) + " mu=" + fmt(p.mu); }, match_tol, report);
  return a && b;
}

bool quadratic_forms_equal(const QuadraticCanon& x, const QuadraticCanon& y, double match_tol) {
  if (x.blocks.blocks.size() != y.blocks.blocks.size()) return false;
  if (x.blocks.dimension() != y.blocks.dimension()) return false;
  // summands: 1x1 [lambda] and [[l1, gamma],[0, l2]]
  struct S {
    Complex l1, l2;
    double g = 0.0;
    bool two = false;
  };
  auto summands = [](const QuadraticCanon& q) {
    std::vector<S> out;
    for (const auto& b : q.blocks.blocks) {
      if (b.rows() == 1)
        out.push_back({b(0, 0), 0.0, 0.0, false});
      else
        out.push_back({b(0, 0), b(1, 1), b(0, 1).real(), true});
    }
    return out;
  };
  return match_lists<S>(
      summands(x), summands(y), "summand",
      [](const S& p, const S& q) {
        if (p.two != q.two) return 1e300;
        double d = rel(p.l1, q.l1);
        if (p.two) d = std::max({d, rel(p.l2, q.l2), rel(p.g, q.g)});
        return d;
      },
      [](const S&) { return std::string(); }, match_tol, nullptr);
}

bool quadratic_invariants_equal(const QuadraticCanon& x, const QuadraticCanon& y, const Matrix& a,
                                const Matrix& b, double match_tol, std::vector<BlockMatch>* report) {
  auto eig = [](const QuadraticCanon& q, std::size_t n) {
    std::vector<Complex> e(q.mult1, q.lambda1);
    e.insert(e.end(), n - q.mult1, q.lambda2);
    return e;
  };
  const bool ev = match_lists<Complex>(
      eig(x, a.rows()), eig(y, b.rows()), "eigenvalue",
      [](const Complex& p, const Complex& q) { return rel(p, q); },
      [](const Complex& p) { return fmt(p); }, match_tol, report);
  const auto sa = singular_values(a), sb = singular_values(b);
  const double sc = std::max({1.0, sa.empty() ? 0.0 : sa.front(), sb.empty() ? 0.0 : sb.front()});
  bool sv = sa.size() == sb.size();
  for (std::size_t i = 0; i < std::min(sa.size(), sb.size()); ++i) {
    const double d = std::abs(sa[i] - sb[i]) / sc;
    const bool hit = d <= match_tol;
    sv = sv && hit;
    if (report) report->push_back({"singular_value", fmt(sa[i]), fmt(sb[i]), d, hit});
  }
  return ev && sv;
}

EquivalenceReport decide_unitary_congruence(const Matrix& a, const Matrix& b, const ToleranceConfig& tol) {
  require_same(a, b);
  EquivalenceReport rep;
  if (!is_congruence_normal(a, tol) || !is_congruence_normal(b, tol)) {
    rep.method = "none";
    rep.note = "outside the congruence-normal class";
    return rep;
  }
  rep.method = "canonical_form";
  const CongruenceCanon ca = canon_congruence(a, tol);
  const CongruenceCanon cb = canon_congruence(b, tol);
  rep.verdict = congruence_forms_equal(ca.form, cb.form, kBlockMatchTol, &rep.blocks)
                    ? Verdict::equivalent
                    : Verdict::not_equivalent;
  return rep;
}

EquivalenceReport decide_unitary_star_congruence(const Matrix& a, const Matrix& b,
                                                 const ToleranceConfig& tol) {
  require_same(a, b);
  EquivalenceReport rep;
  if (is_squared_normal(a, tol) && is_squared_normal(b, tol)) {
    rep.method = "canonical_form";
    const StarCanon ca = canon_star(a, tol);
    const StarCanon cb = canon_star(b, tol);
    rep.verdict = star_forms_equal(ca.form, cb.form, kBlockMatchTol, &rep.blocks)
                      ? Verdict::equivalent
                      : Verdict::not_equivalent;
    return rep;
  }
  if (a.rows() == 2) {
    rep.method = "pearcy";
    const Complex ta[3] = {trace(a), trace(a * a), trace(adjoint(a) * a)};
    const Complex tb[3] = {trace(b), trace(b * b), trace(adjoint(b) * b)};
    const char* names[3] = {"tr", "tr2", "trstar"};
    for (int i = 0; i < 3; ++i) {
      const double d = std::abs(ta[i] - tb[i]) / std::max({1.0, std::abs(ta[i]), std::abs(tb[i])});
      rep.blocks.push_back({std::string("trace:") + names[i], fmt(ta[i]), fmt(tb[i]), d,
                            d <= tol.residual_rtol});
    }
    rep.verdict = pearcy_equal_2x2(a, b, tol) ? Verdict::equivalent : Verdict::not_equivalent;
    return rep;
  }
  try {
    const QuadraticCanon qa = canon_quadratic(a, tol);
    const QuadraticCanon qb = canon_quadratic(b, tol);
    rep.method = "quadratic";
    rep.verdict = quadratic_invariants_equal(qa, qb, a, b, kBlockMatchTol, &rep.blocks)
                      ? Verdict::equivalent
                      : Verdict::not_equivalent;
    return rep;
  } catch (const PreconditionError&) {
  }
  rep.method = "none";
  rep.note = "outside the squared-normal, 2x2 and quadratic classes";
  return rep;
}

Verdict decide_involutions(const Matrix& a, const Matrix& b, const ToleranceConfig& tol) {
  require_same(a, b);
  const InvolutionCanon x = canon_involution(a, tol);
  const InvolutionCanon y = canon_involution(b, tol);
  if (x.p != y.p || x.sigma.size() != y.sigma.size()) return Verdict::not_equivalent;
  for (std::size_t i = 0; i < x.sigma.size(); ++i)
    if (rel(x.sigma[i], y.sigma[i]) > kBlockMatchTol) return Verdict::not_equivalent;
  return Verdict::equivalent;
}

UpgradeResult upgrade_congruence_to_unitary(const Matrix& a, const Matrix& b, const Matrix& s,
                                            CongruenceMode mode, const ToleranceConfig& tol) {
  require_same(a, b);
  require_same(a, s);
  if (!is_nonsingular(a, tol) || !is_nonsingular(b, tol) || !is_nonsingular(s, tol))
    throw PreconditionError("A, B and S must be nonsingular");
  const bool cong = mode == CongruenceMode::congruence;
  UpgradeResult out;
  double h = relative_residual(a, apply_congruence(s, b, mode));
  const bool both_unitary = is_unitary(a, tol) && is_unitary(b, tol);
  const auto second = [&](const Matrix& m) {
    return cong ? coninvolutory_residual(m) <= tol.residual_rtol
                : involutory_residual(m) <= tol.residual_rtol;
  };
  out.weak_hypothesis = both_unitary || (second(a) && second(b));
  if (!out.weak_hypothesis) {
    const Matrix ai = adjoint(inverse(a));
    const Matrix bi = adjoint(inverse(b));
    h = std::max(h, relative_residual(ai, apply_congruence(s, bi, mode)));
  }
  out.hypothesis_residual = h;
  if (h > tol.residual_rtol) throw PreconditionError("pair congruence hypothesis fails", h);

  out.W = polar(s, PolarSide::right).W;
  out.residual = relative_residual(a, apply_congruence(out.W, b, mode));
  const double ud = unitary_residual(out.W);
  if (out.residual > tol.residual_rtol || ud > tol.residual_rtol)
    throw NumericalError("polar factor does not realize the congruence", std::max(out.residual, ud));
  return out;
}

RaySignature congruence_class_signature(const Matrix& a, const ToleranceConfig& tol) {
  const CongruenceCanonicalForm f = canon_conjugate_normal(a, tol);
  RaySignature sig;
  for (double s : f.one_by_one) (s > 0.0 ? sig.positive_count : sig.zero_count)++;
  std::vector<double> th;
  for (const auto& p : f.two_by_two) th.push_back(std::abs(std::arg(p.mu)));
  std::sort(th.begin(), th.end());
  for (double t : th) {
    if (!sig.rays.empty() && std::abs(sig.rays.back().theta - t) <= 10.0 * tol.cluster_rtol)
      ++sig.rays.back().count;
    else
      sig.rays.push_back({t, 1});
  }
  return sig;
}

bool signatures_equal(const RaySignature& x, const RaySignature& y, double angle_tol) {
  if (x.positive_count != y.positive_count || x.zero_count != y.zero_count) return false;
  if (x.rays.size() != y.rays.size()) return false;
  for (std::size_t i = 0; i < x.rays.size(); ++i)
    if (x.rays[i].count != y.rays[i].count || std::abs(x.rays[i].theta - y.rays[i].theta) > angle_tol)
      return false;
  return true;
}

}  // namespace canonica
