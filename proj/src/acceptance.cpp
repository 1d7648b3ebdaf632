#include "canonica/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>

#include "canonica/canon_congruence.hpp"
#include "canonica/canon_star.hpp"
#include "canonica/cli.hpp"
#include "canonica/equivalence.hpp"
#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/generators.hpp"
#include "canonica/iteration.hpp"
#include "canonica/json_io.hpp"
#include "canonica/predicates.hpp"
#include "canonica/regularization.hpp"

namespace canonica::acceptance {

namespace {

using gen::Rng;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Tally {
  std::size_t trials = 0, failures = 0;
  double worst = 0.0;
  std::string first_failure;
  void fail(std::string why) {
    ++failures;
    if (first_failure.empty()) first_failure = std::move(why);
  }
  void see(double e) { worst = std::max(worst, e); }
  std::string summary() const {
    std::string s = std::to_string(trials - failures) + "/" + std::to_string(trials) +
                    " ok, worst " + num(worst);
    if (!first_failure.empty()) s += "; first failure: " + first_failure;
    return s;
  }
};

bool has_singular_piece(const CongruenceCanonicalForm& f) {
  for (double s : f.one_by_one)
    if (s == 0.0) return true;
  for (const auto& p : f.two_by_two)
    if (p.mu == Complex(0.0)) return true;
  return false;
}

bool has_singular_piece(const StarCanonicalForm& f) {
  for (Complex l : f.one_by_one)
    if (l == Complex(0.0)) return true;
  for (const auto& p : f.two_by_two)
    if (p.mu == Complex(0.0)) return true;
  return false;
}

CriterionResult congruence_invariance(const Options& o) {
  CriterionResult r{1, "canonical invariance under unitary congruence", false, {}, 0.0};
  Rng rng(o.seed ^ 0x1001);
  const ToleranceConfig tol;
  Tally t;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = pick(rng, 1, 12);
    const auto f = gen::random_congruence_form(n, rng);
    const Matrix a = gen::congruence_normal_from(f, gen::random_unitary(n, rng));
    ++t.trials;
    try {
      const CongruenceCanon c = canon_congruence(a, tol);
      std::vector<BlockMatch> rep;
      const bool ok = congruence_forms_equal(f, c.form, 1e-7, &rep);
      for (const auto& b : rep) t.see(b.error);
      if (!ok) t.fail("trial " + std::to_string(i) + " block multiset differs");
    } catch (const Error& e) {
      t.fail("trial " + std::to_string(i) + ": " + e.what());
    }
  }
  r.pass = t.failures == 0;
  r.detail = t.summary();
  return r;
}

CriterionResult star_invariance(const Options& o) {
  CriterionResult r{2, "canonical invariance under unitary *congruence, triangular rendering", false, {}, 0.0};
  Rng rng(o.seed ^ 0x2002);
  const ToleranceConfig tol;
  Tally t;
  double tri_worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = pick(rng, 1, 12);
    const auto f = gen::random_star_form(n, rng);
    const Matrix a = gen::squared_normal_from(f, gen::random_unitary(n, rng));
    ++t.trials;
    try {
      const StarCanon c = canon_star(a, tol, StarRepresentation::h2);
      std::vector<BlockMatch> rep;
      const bool ok = star_forms_equal(f, c.form, 1e-7, &rep);
      for (const auto& b : rep) t.see(b.error);
      if (!ok) {
        t.fail("trial " + std::to_string(i) + " block multiset differs");
        continue;
      }
      // triangular blocks realized by the transform, against the formulas
      const StarCanon ct = canon_star(a, tol, StarRepresentation::triangular);
      const Matrix red = ct.transform * a * adjoint(ct.transform);
      const double scale = std::max(1.0, frobenius_norm(a));
      std::size_t at = ct.form.one_by_one.size();
      bool tri_ok = true;
      for (const auto& p : ct.form.two_by_two) {
        Complex nu = std::sqrt(p.mu);
        if (nu.real() < 0.0 || (nu.real() == 0.0 && nu.imag() < 0.0)) nu = -nu;
        nu *= p.tau;
        const double rr = p.tau * (1.0 - std::abs(p.mu));
        const Matrix expect{{nu, rr}, {0.0, -nu}};
        const double e = frobenius_norm(red.block(at, at, 2, 2) - expect) / scale;
        tri_worst = std::max(tri_worst, e);
        if (e > 1e-10 || !(rr > 0.0)) tri_ok = false;
        at += 2;
      }
      const double rest = relative_residual(red, assemble_star(ct.form));
      tri_worst = std::max(tri_worst, rest);
      if (!tri_ok || rest > 1e-10) t.fail("trial " + std::to_string(i) + " triangular rendering off");
    } catch (const Error& e) {
      t.fail("trial " + std::to_string(i) + ": " + e.what());
    }
  }
  // h2 <-> triangular round trip
  double rt = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const StarPair p{gen::uniform(rng, 0.1, 5.0), std::polar(gen::uniform(rng, 0.0, 0.99), gen::uniform(rng, -3.14, 3.14))};
    const StarPair q = from_triangular(to_triangular(p));
    rt = std::max({rt, std::abs(p.tau - q.tau) / p.tau, std::abs(p.mu - q.mu)});
  }
  if (rt > 1e-12) t.fail("round trip error " + num(rt));
  r.pass = t.failures == 0;
  r.detail = t.summary() + ", triangular " + num(tri_worst) + ", round trip " + num(rt);
  return r;
}

CriterionResult regularization_exactness(const Options& o) {
  CriterionResult r{3, "regularization exactness", false, {}, 0.0};
  Rng rng(o.seed ^ 0x3003);
  const ToleranceConfig tol;
  Tally t;
  for (int i = 0; i < 100; ++i) {
    const bool cong = i % 2 == 0;
    const std::size_t n = pick(rng, 2, 12);
    Matrix a;
    std::size_t want_m1 = 0, want_m2 = 0;
    if (cong) {
      CongruenceCanonicalForm f;
      do f = gen::random_congruence_form(n, rng); while (!has_singular_piece(f));
      for (double s : f.one_by_one) want_m1 += s == 0.0;
      for (const auto& p : f.two_by_two) want_m2 += p.mu == Complex(0.0);
      a = gen::congruence_normal_from(f, gen::random_unitary(n, rng));
    } else {
      StarCanonicalForm f;
      do f = gen::random_star_form(n, rng); while (!has_singular_piece(f));
      for (Complex l : f.one_by_one) want_m1 += l == Complex(0.0);
      for (const auto& p : f.two_by_two) want_m2 += p.mu == Complex(0.0);
      a = gen::squared_normal_from(f, gen::random_unitary(n, rng));
    }
    want_m1 += want_m2;
    ++t.trials;
    const std::string tag = "trial " + std::to_string(i);
    try {
      const CongruenceMode mode = cong ? CongruenceMode::congruence : CongruenceMode::star;
      const ReducedForm rf = regularize(a, mode, tol);
      const double ud = unitarity_defect(rf.transform);
      const Matrix red = apply_congruence(rf.transform, a, mode);
      const std::size_t rk = n - rf.m1;
      Matrix off = red;
      for (std::size_t p = 0; p < rk; ++p)
        for (std::size_t q = 0; q < rk; ++q) off(p, q) = 0.0;
      for (std::size_t k = 0; k < rf.m2; ++k) off(rk - rf.m2 + k, rk + k) = 0.0;
      const double mass = frobenius_norm(off) / std::max(1e-300, frobenius_norm(a));
      double sig_err = 0.0;
      for (std::size_t k = 0; k < rf.m2; ++k)
        sig_err = std::max(sig_err, std::abs(red(rk - rf.m2 + k, rk + k) - rf.sigma[k]));
      t.see(std::max(ud, mass));

      const auto sa = singular_values(a);
      const Matrix sq = cong ? conj(a) * a : a * a;
      const std::size_t ra = numerical_rank(sa, n, n, tol, sa.front());
      const std::size_t rs = numerical_rank(singular_values(sq), n, n, tol, sa.front() * sa.front());
      if (ud > 1e-9) t.fail(tag + " transform not unitary");
      else if (mass > 1e-8) t.fail(tag + " off-pattern mass " + num(mass));
      else if (sig_err > 1e-8 * std::max(1.0, sa.front())) t.fail(tag + " sigma entries off");
      else if (ra < rs || rf.m2 != ra - rs) t.fail(tag + " m2 != rank A - rank of square");
      else if (rf.m2 != want_m2 || rf.m1 != want_m1) t.fail(tag + " m1/m2 differ from construction");
    } catch (const Error& e) {
      t.fail(tag + ": " + e.what());
    }
  }
  r.pass = t.failures == 0;
  r.detail = t.summary();
  return r;
}

Matrix mixed_instance(int i, Rng& rng) {
  const std::size_t n = pick(rng, 2, 8);
  switch (i % 12) {
    case 0: return gen::gaussian(n, n, rng);
    case 1: return gen::random_normal(n, rng);
    case 2: return gen::random_unitary(n, rng);
    case 3: return gen::random_conjugate_normal(n, rng, false);
    case 4: return gen::random_conjugate_normal(n, rng, true);
    case 5: return gen::random_congruence_normal(n, rng, {false, true});
    case 6: return gen::random_congruence_normal(n, rng);
    case 7: return gen::random_squared_normal(n, rng, {false, true});
    case 8: return gen::random_squared_normal(n, rng);
    case 9: return gen::random_coninvolutory(n, rng);
    case 10: return gen::random_involution(n, rng);
    default: return gen::random_hermitian(n, rng);
  }
}

CriterionResult characterizations(const Options& o) {
  CriterionResult r{4, "characterization equivalences", false, {}, 0.0};
  Rng rng(o.seed ^ 0x4004);
  const ToleranceConfig tol;
  Tally t;
  std::size_t checks = 0;
  const CharacterizationSet sets[] = {
      CharacterizationSet::congruence_normal_idents, CharacterizationSet::squared_normal_idents,
      CharacterizationSet::conjugate_normal_afd, CharacterizationSet::congruence_normal_afd};
  const char* names[] = {"cosquare identities", "*cosquare identities", "conjugate normal",
                         "congruence normal"};
  for (int i = 0; i < 200; ++i) {
    const Matrix a = mixed_instance(i, rng);
    ++t.trials;
    const std::string tag = "instance " + std::to_string(i);
    bool ok = true;
    try {
      for (int s = 0; s < 4; ++s) {
        ++checks;
        const auto rep = verify_characterizations(a, sets[s], tol);
        if (!rep.all_agree) {
          ok = false;
          if (t.first_failure.empty()) t.first_failure = tag + " " + names[s];
        }
      }
      for (const auto& d : verify_bar_blocks(a, tol)) {
        ++checks;
        if (!d.agree()) {
          ok = false;
          if (t.first_failure.empty()) t.first_failure = tag + " bar block " + d.name;
        }
      }
    } catch (const Error& e) {
      ok = false;
      if (t.first_failure.empty()) t.first_failure = tag + ": " + e.what();
    }
    if (!ok) ++t.failures;
  }
  r.pass = t.failures == 0;
  r.detail = t.summary() + ", " + std::to_string(checks) + " flag equivalences";
  return r;
}

double invariant_gap(const Matrix& x, const Matrix& y) {
  const Complex a[3] = {trace(x), trace(x * x), trace(adjoint(x) * x)};
  const Complex b[3] = {trace(y), trace(y * y), trace(adjoint(y) * y)};
  double g = 0.0;
  for (int i = 0; i < 3; ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

CriterionResult pearcy(const Options& o) {
  CriterionResult r{5, "Pearcy 2x2 criterion", false, {}, 0.0};
  Rng rng(o.seed ^ 0x5005);
  const ToleranceConfig tol;
  std::size_t fp = 0, fn = 0;
  for (int i = 0; i < 500; ++i) {
    const StarPair p{gen::uniform(rng, 0.1, 5.0), std::polar(gen::uniform(rng, 0.0, 0.99), gen::uniform(rng, -3.14, 3.14))};
    if (!pearcy_equal_2x2(h2_block(p.tau, p.mu), triangular_block(to_triangular(p)), tol)) ++fn;
  }
  for (int i = 0; i < 500; ++i) {
    const Matrix x = gen::gaussian(2, 2, rng);
    const Matrix v = gen::random_unitary(2, rng);
    const Matrix y0 = v * x * adjoint(v);
    if (!pearcy_equal_2x2(x, y0, tol)) ++fn;
    Matrix y;
    do {
      y = y0 + gen::gaussian(2, 2, rng) * Complex(gen::uniform(rng, 1e-3, 1e-1));
    } while (invariant_gap(x, y) < 1e-3);
    if (pearcy_equal_2x2(x, y, tol)) ++fp;
  }
  r.pass = fp == 0 && fn == 0;
  r.detail = std::to_string(fn) + " false negatives, " + std::to_string(fp) + " false positives over 1500 pairs";
  return r;
}

Matrix involution_form(std::size_t plus, std::size_t minus, const std::vector<double>& sig, bool tri) {
  std::vector<Matrix> b;
  for (std::size_t i = 0; i < plus; ++i) b.push_back(Matrix{{1.0}});
  for (std::size_t i = 0; i < minus; ++i) b.push_back(Matrix{{-1.0}});
  for (double s : sig)
    b.push_back(tri ? Matrix{{1.0, s - 1.0 / s}, {0.0, -1.0}} : Matrix{{0.0, 1.0 / s}, {s, 0.0}});
  return direct_sum(b);
}

CriterionResult involutions_and_projections(const Options& o) {
  CriterionResult r{6, "involution and lambda-projection invariants", false, {}, 0.0};
  Rng rng(o.seed ^ 0x6006);
  const ToleranceConfig tol;
  Tally t;
  for (int i = 0; i < 100; ++i) {
    const std::size_t q = pick(rng, 0, 3);
    std::size_t plus = pick(rng, 0, 3), minus = pick(rng, 0, 3);
    if (i >= 50 && i % 2 == 0 && plus + minus == 0) plus = 1;  // p flip needs a 1x1 block
    std::vector<double> sig;
    for (std::size_t k = 0; k < q; ++k) sig.push_back(gen::uniform(rng, 1.2, 4.0));
    if (i >= 50 && i % 2 == 1 && sig.empty()) sig.push_back(gen::uniform(rng, 1.2, 4.0));
    if (plus + minus + 2 * sig.size() == 0) plus = 1;
    const std::size_t n = plus + minus + 2 * sig.size();
    const Matrix u1 = gen::random_unitary(n, rng), u2 = gen::random_unitary(n, rng);
    const Matrix a = u1 * involution_form(plus, minus, sig, false) * adjoint(u1);
    Verdict expect = Verdict::equivalent;
    std::size_t plus2 = plus, minus2 = minus;
    std::vector<double> sig2 = sig;
    if (i >= 50) {
      expect = Verdict::not_equivalent;
      if (i % 2 == 0) {
        if (plus > 0) {
          --plus2;
          ++minus2;
        } else {
          ++plus2;
          --minus2;
        }
      } else {
        sig2[0] *= 1.05;
      }
    }
    const Matrix b = u2 * involution_form(plus2, minus2, sig2, true) * adjoint(u2);
    ++t.trials;
    try {
      const Verdict v1 = decide_involutions(a, b, tol);
      const Verdict v2 = decide_unitary_star_congruence(a, b, tol).verdict;
      if (v1 != expect || v2 != expect)
        t.fail("involution pair " + std::to_string(i) + " verdict " + to_string(v1) + "/" + to_string(v2));
    } catch (const Error& e) {
      t.fail("involution pair " + std::to_string(i) + ": " + e.what());
    }
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = pick(rng, 2, 10);
    Matrix a;
    if (i % 3 == 0) {
      // lambda = 0: nilpotent of index two
      const std::size_t k = pick(rng, 1, n / 2);
      Matrix j(n, n);
      for (std::size_t b = 0; b < k; ++b) j(2 * b, 2 * b + 1) = 1.0;
      const Matrix s = gen::random_nonsingular(n, rng, 4.0);
      a = s * j * inverse(s);
    } else {
      const Complex lam = std::polar(gen::uniform(rng, 0.5, 2.0), gen::uniform(rng, -3.0, 3.0));
      a = gen::random_lambda_projection(n, lam, pick(rng, 1, n - 1), rng);
    }
    ++t.trials;
    try {
      const LambdaProjectionCanon c = canon_lambda_projection(a, tol);
      t.see(c.singular_value_residual);
      auto s1 = singular_values(a), s2 = singular_values(c.blocks.assemble());
      double e = 0.0;
      for (std::size_t k = 0; k < n; ++k) e = std::max(e, std::abs(s1[k] - s2[k]));
      e /= std::max(1.0, s1.front());
      if (c.singular_value_residual > 1e-8) t.fail("projection " + std::to_string(i) + " singular value identity off");
      else if (e > 1e-8) t.fail("projection " + std::to_string(i) + " canonical singular values off");
    } catch (const Error& e) {
      t.fail("projection " + std::to_string(i) + ": " + e.what());
    }
  }
  r.pass = t.failures == 0;
  r.detail = t.summary();
  return r;
}

CriterionResult quadratic(const Options& o) {
  CriterionResult r{7, "quadratic minimal polynomial", false, {}, 0.0};
  Rng rng(o.seed ^ 0x7007);
  const ToleranceConfig tol;
  Tally t;
  std::size_t pairs = 0, mismatches = 0, equivalent = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = pick(rng, 2, 10);
    const std::size_t k = pick(rng, 1, n - 1);
    const Complex l1 = std::polar(gen::uniform(rng, 0.5, 2.5), gen::uniform(rng, -3.0, 3.0));
    Complex l2;
    const double kind = gen::uniform(rng, 0.0, 1.0);
    if (kind < 0.2)
      l2 = 0.0;
    else if (kind < 0.3)
      l2 = -l1;
    else
      l2 = std::polar(gen::uniform(rng, 0.5, 2.5), gen::uniform(rng, -3.0, 3.0));
    const Matrix a = gen::random_quadratic(n, l1, l2, k, rng);
    ++t.trials;
    const std::string tag = "instance " + std::to_string(i);
    try {
      const QuadraticCanon qa = canon_quadratic(a, tol);
      const auto s = singular_values(a);
      double e = qa.predicted_singular_values.size() == n ? 0.0 : 1.0;
      for (std::size_t j = 0; j < std::min(n, qa.predicted_singular_values.size()); ++j)
        e = std::max(e, std::abs(s[j] - qa.predicted_singular_values[j]));
      e /= std::max(1.0, s.front());
      t.see(e);
      if (e > 1e-7) {
        t.fail(tag + " predicted singular values off by " + num(e));
        continue;
      }
      const Matrix u = gen::random_unitary(n, rng);
      const Matrix w = gen::random_unitary(n, rng);
      const Matrix others[3] = {u * a * adjoint(u), w * qa.blocks.assemble() * adjoint(w),
                                gen::random_quadratic(n, l1, l2, k, rng)};
      for (const auto& b : others) {
        ++pairs;
        const QuadraticCanon qb = canon_quadratic(b, tol);
        const bool by_inv = quadratic_invariants_equal(qa, qb, a, b);
        const bool by_form = quadratic_forms_equal(qa, qb);
        equivalent += by_form;
        if (by_inv != by_form) ++mismatches;
      }
    } catch (const Error& ex) {
      t.fail(tag + ": " + ex.what());
    }
  }
  if (mismatches) t.fail(std::to_string(mismatches) + " criterion/form disagreements");
  r.pass = t.failures == 0;
  r.detail = t.summary() + ", " + std::to_string(pairs) + " pairs (" + std::to_string(equivalent) +
             " equivalent), " + std::to_string(mismatches) + " disagreements";
  return r;
}

CriterionResult polar_upgrade(const Options& o) {
  CriterionResult r{8, "polar upgrade to unitary (*)congruence", false, {}, 0.0};
  Rng rng(o.seed ^ 0x8008);
  const ToleranceConfig tol;
  Tally t;
  double worst_u = 0.0, worst_r = 0.0;
  for (int i = 0; i < 100; ++i) {
    const bool cong = i % 2 == 0;
    const CongruenceMode mode = cong ? CongruenceMode::congruence : CongruenceMode::star;
    const std::size_t n = pick(rng, 2, 10);
    const Matrix u = gen::random_unitary(n, rng);
    Matrix b, s;
    if (i % 5 == 4) {
      b = gen::random_unitary(n, rng);
      s = u;
    } else {
      std::vector<Matrix> blocks, qs;
      std::size_t at = 0;
      while (at < n) {
        if (n - at >= 2 && gen::uniform(rng, 0.0, 1.0) < 0.7) {
          const Complex mu = std::polar(gen::uniform(rng, 0.2, 2.0), gen::uniform(rng, -3.0, 3.0));
          blocks.push_back(h2_block(gen::uniform(rng, 0.5, 3.0), mu));
          const double q = gen::uniform(rng, 0.4, 2.5);
          qs.push_back(Matrix{{q, 0.0}, {0.0, 1.0 / q}});
          at += 2;
        } else {
          blocks.push_back(Matrix{{std::polar(gen::uniform(rng, 0.5, 3.0), gen::uniform(rng, -3.0, 3.0))}});
          qs.push_back(Matrix{{1.0}});
          ++at;
        }
      }
      const Matrix c = direct_sum(blocks), q = direct_sum(qs);
      const Matrix v = gen::random_unitary(n, rng);
      b = cong ? v * c * transpose(v) : v * c * adjoint(v);
      s = u * v * q * adjoint(v);
    }
    const Matrix a = apply_congruence(s, b, mode);
    const Matrix a_exact = apply_congruence(u, b, mode);
    ++t.trials;
    try {
      const UpgradeResult up = upgrade_congruence_to_unitary(a, b, s, mode, tol);
      const double ud = unitarity_defect(up.W);
      const double rr = frobenius_norm(a - apply_congruence(up.W, b, mode)) / frobenius_norm(a);
      const double wu = frobenius_norm(up.W - u);
      worst_u = std::max(worst_u, ud);
      worst_r = std::max(worst_r, rr);
      if (ud > 1e-9 || rr > 1e-8) t.fail("triple " + std::to_string(i) + " W fails");
      else if (relative_residual(a, a_exact) > 1e-9 || wu > 1e-7)
        t.fail("triple " + std::to_string(i) + " W differs from the constructed unitary");
    } catch (const Error& e) {
      t.fail("triple " + std::to_string(i) + ": " + e.what());
    }
  }
  r.pass = t.failures == 0;
  r.detail = t.summary() + ", unitarity " + num(worst_u) + ", realization " + num(worst_r);
  return r;
}

CriterionResult bounded_iteration(const Options& o) {
  CriterionResult r{9, "bounded iteration classifier vs simulator", false, {}, 0.0};
  Rng rng(o.seed ^ 0x9009);
  const ToleranceConfig tol;
  Tally t;
  for (int i = 0; i < 100; ++i) {
    const bool bounded = i < 50;
    const bool star = i % 2 == 1;
    const std::size_t n = pick(rng, 2, 12);
    std::vector<Matrix> blocks;
    std::size_t at = 0;
    if (!bounded) {
      const Complex mu = std::polar(1.0 / 1.2, gen::uniform(rng, -3.0, 3.0));
      blocks.push_back(h2_block(gen::uniform(rng, 0.5, 2.0), mu));
      at = 2;
    }
    while (at < n) {
      if (!star && n - at >= 2 && gen::uniform(rng, 0.0, 1.0) < 0.5) {
        const Complex mu = gen::uniform(rng, 0.0, 1.0) < 0.2 ? Complex(-1.0)
                                                               : std::polar(1.0, gen::uniform(rng, 0.2, 3.0));
        blocks.push_back(h2_block(gen::uniform(rng, 0.5, 2.0), mu));
        at += 2;
      } else {
        const double m = gen::uniform(rng, 0.5, 2.0);
        blocks.push_back(Matrix{{star ? std::polar(m, gen::uniform(rng, -3.0, 3.0)) : Complex(m)}});
        ++at;
      }
    }
    const Matrix f = direct_sum(blocks);
    const Matrix s = bounded ? gen::random_unitary(n, rng) : gen::random_nonsingular(n, rng, 10.0);
    const Matrix a = star ? s * f * adjoint(s) : s * f * transpose(s);
    const IterationMode mode = star ? IterationMode::star : IterationMode::transpose;
    std::vector<Complex> x0(n);
    for (auto& z : x0) z = gen::gaussian_complex(rng);
    ++t.trials;
    const std::string tag = "instance " + std::to_string(i);
    try {
      const BoundednessReport c = classify_bounded(a, mode, tol);
      const IterationTrace tr = simulate(a, x0, 1000, mode, tol);
      const double peak = *std::max_element(tr.norms.begin(), tr.norms.end()) / tr.norms.front();
      const bool agree = (c.verdict == Boundedness::bounded && tr.growth == Growth::bounded) ||
                         (c.verdict == Boundedness::unbounded && tr.growth == Growth::unbounded);
      if (!agree)
        t.fail(tag + " classifier " + to_string(c.verdict) + " vs simulator " + to_string(tr.growth));
      else if (bounded != (c.verdict == Boundedness::bounded))
        t.fail(tag + " wrong verdict");
      else if (bounded && peak > kBoundedFactor)
        t.fail(tag + " bounded run grew by " + num(peak));
      else if (!bounded && tr.norms.back() < kUnboundedFactor * tr.norms.front())
        t.fail(tag + " unbounded run stayed small");
    } catch (const Error& e) {
      t.fail(tag + ": " + e.what());
    }
  }
  r.pass = t.failures == 0;
  r.detail = t.summary();
  return r;
}

std::vector<std::string> fixture_flags(const std::string& name) {
  auto starts = [&](const char* p) { return name.rfind(p, 0) == 0; };
  if (starts("star_tri_")) return {"--star", "--triangular"};
  if (starts("star_")) return {"--star"};
  if (starts("unit_ro_")) return {"--congruence", "--style", "real_orthogonal"};
  if (starts("unit_hu_")) return {"--congruence", "--style", "hermitian_unitary"};
  return {"--congruence"};
}

CriterionResult cli_round_trip(const Options& o) {
  namespace fs = std::filesystem;
  CriterionResult r{10, "CLI determinism and round trip", false, {}, 0.0};
  Tally t;
  std::error_code ec;
  if (o.fixtures_dir.empty() || !fs::is_directory(o.fixtures_dir, ec)) {
    r.detail = "fixture directory not available";
    return r;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(o.fixtures_dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    std::vector<std::string> args = {"canon"};
    for (auto& f : fixture_flags(p.filename().string())) args.push_back(f);
    args.push_back("--verify");
    args.push_back(p.string());
    std::ostringstream o1, o2, e1, e2;
    ++t.trials;
    const int c1 = cli::run(args, o1, e1);
    const int c2 = cli::run(args, o2, e2);
    const std::string tag = p.filename().string();
    if (c1 != 0 || c2 != 0) {
      t.fail(tag + " exit " + std::to_string(c1) + ": " + e1.str());
      continue;
    }
    if (o1.str() != o2.str()) {
      t.fail(tag + " output not byte-identical");
      continue;
    }
    try {
      const auto j = io::json::parse(o1.str());
      const double res = j.at("verify").at("residual").get<double>();
      t.see(res);
      if (!(res <= 1e-8)) t.fail(tag + " verify residual " + num(res));
    } catch (const std::exception& e) {
      t.fail(tag + " unreadable report: " + e.what());
    }
  }
  if (files.empty()) t.fail("empty fixture corpus");
  r.pass = t.failures == 0;
  r.detail = t.summary();
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const Options& opt) {
  using Fn = CriterionResult (*)(const Options&);
  static const Fn table[kCriterionCount] = {
      congruence_invariance, star_invariance,  regularization_exactness, characterizations,
      pearcy,                involutions_and_projections, quadratic,    polar_upgrade,
      bounded_iteration,     cli_round_trip};
  if (id < 1 || id > kCriterionCount) throw PreconditionError("no such criterion");
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r = table[id - 1](opt);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double limit = id == 1 ? 10.0 : id == 9 ? 5.0 : 0.0;
  if (limit > 0.0 && r.seconds > limit) {
    r.pass = false;
    r.detail += ", exceeded " + num(limit) + " s";
  }
  return r;
}

std::vector<CriterionResult> run_all(const Options& opt) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= kCriterionCount; ++i) out.push_back(run_criterion(i, opt));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return "criterion " + std::to_string(r.id) + ": " + (r.pass ? "PASS " : "FAIL ") + r.name + " (" +
         r.detail + "; " + secs + " s)";
}

}  // namespace canonica::acceptance
