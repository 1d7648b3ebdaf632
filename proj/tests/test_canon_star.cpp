#include <doctest.h>

#include <numbers>

#include "canonica/canon_congruence.hpp"
#include "canonica/canon_star.hpp"
#include "canonica/equivalence.hpp"
#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "support.hpp"

using namespace canonica;
using support::rel_err;

namespace {
const ToleranceConfig tol;
const Complex I(0.0, 1.0);

void check_star_transform(const Matrix& a, const StarCanon& c) {
  CHECK(unitarity_defect(c.transform) < 1e-10);
  CHECK(rel_err(assemble_star(c.form), c.transform * a * adjoint(c.transform)) < 1e-10);
}
}  // namespace

TEST_CASE("star cosquare examples") {
  gen::Rng rng(71);
  const Matrix h = gen::random_hermitian(3, rng) + 5.0 * Matrix::identity(3);
  CHECK(rel_err(Matrix::identity(3), star_cosquare(h, tol)) < 1e-13);
  CHECK(rel_err(Matrix{{0.5, 0.0}, {0.0, 2.0}}, star_cosquare(Matrix{{0.0, 1.0}, {0.5, 0.0}}, tol)) < 1e-14);
  const Matrix u = gen::random_unitary(3, rng);
  CHECK(rel_err(u * u, star_cosquare(u, tol)) < 1e-12);
  CHECK_THROWS_AS(star_cosquare(Matrix(2, 2), tol), PreconditionError);
}

TEST_CASE("sqrt_dplus") {
  CHECK(std::abs(sqrt_dplus(4.0) - 2.0) < 1e-15);
  CHECK(std::abs(sqrt_dplus(-1.0) - I) < 1e-15);
  CHECK(std::abs(sqrt_dplus(0.25 * I) - std::polar(0.5, std::numbers::pi / 4)) < 1e-15);
  CHECK(std::abs(sqrt_dplus(Complex(-1.0, -0.0)) - I) < 1e-15);
  gen::Rng rng(72);
  for (int t = 0; t < 100; ++t) {
    const Complex z = gen::gaussian_complex(rng);
    const Complex r = sqrt_dplus(z);
    CHECK(std::abs(r * r - z) < 1e-14 * std::max(1.0, std::abs(z)));
    CHECK((r.real() > 0.0 || (r.real() == 0.0 && r.imag() >= 0.0)));
  }
}

TEST_CASE("triangular rendering") {
  const TriangularPair t = to_triangular({1.0, -0.25});
  CHECK(std::abs(t.nu - 0.5 * I) < 1e-15);
  CHECK(t.r == doctest::Approx(0.75));
  CHECK(rel_err(Matrix{{0.5 * I, 0.75}, {0.0, -0.5 * I}}, triangular_block(t)) < 1e-15);
  const TriangularPair h = to_triangular({1.0, 0.5});
  CHECK(std::abs(h.nu - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(h.r == doctest::Approx(0.5));
  CHECK(star_pair_block({2.0, 1.0 / 3.0}, StarRepresentation::h2) == Matrix{{0.0, 2.0}, {2.0 / 3.0, 0.0}});
}

TEST_CASE("triangular round trip and unitary similarity") {
  gen::Rng rng(73);
  for (int t = 0; t < 200; ++t) {
    const StarPair p{gen::uniform(rng, 0.1, 5.0), std::polar(gen::uniform(rng, 0.0, 0.99), gen::uniform(rng, -3.1, 3.1))};
    const StarPair q = from_triangular(to_triangular(p));
    CHECK(std::abs(q.tau - p.tau) < 1e-12 * p.tau);
    CHECK(std::abs(q.mu - p.mu) < 1e-12);
    CHECK(pearcy_equal_2x2(star_pair_block(p, StarRepresentation::h2),
                           star_pair_block(p, StarRepresentation::triangular), tol));
    // unitary *congruence preserves singular values
    CHECK(support::max_abs_diff(support::oracle_singular_values(star_pair_block(p, StarRepresentation::h2)),
                                support::oracle_singular_values(star_pair_block(p, StarRepresentation::triangular))) <
          1e-11 * p.tau);
  }
}

TEST_CASE("canon_star examples") {
  const StarCanon d = canon_star(Matrix{{2.0, 0.0}, {0.0, -3.0 * I}}, tol);
  CHECK(support::multiset_distance(d.form.one_by_one, {2.0, -3.0 * I}) < 1e-12);
  CHECK(d.form.two_by_two.empty());

  const Matrix h = Matrix{{0.0, 1.0}, {0.5, 0.0}};
  const StarCanon c = canon_star(h, tol);
  REQUIRE(c.form.two_by_two.size() == 1);
  CHECK(c.form.two_by_two[0].tau == doctest::Approx(1.0));
  CHECK(std::abs(c.form.two_by_two[0].mu - 0.5) < 1e-12);
  const StarCanon ct = canon_star(h, tol, StarRepresentation::triangular);
  CHECK(ct.form.representation == StarRepresentation::triangular);
  check_star_transform(h, ct);
  const TriangularPair tp = to_triangular(ct.form.two_by_two[0]);
  CHECK(std::abs(tp.nu - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(tp.r == doctest::Approx(0.5));

  gen::Rng rng(74);
  const Matrix u = gen::random_unitary(2, rng);
  const Matrix a = u * h2_block(1.0, -0.25) * adjoint(u);
  const StarCanon q = canon_star(a, tol, StarRepresentation::triangular);
  check_star_transform(a, q);
  CHECK(rel_err(Matrix{{0.5 * I, 0.75}, {0.0, -0.5 * I}}, assemble_star(q.form)) < 1e-10);
}

TEST_CASE("canon_star recovers random forms") {
  gen::Rng rng(75);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 10;
    StarCanonicalForm f = gen::random_star_form(n, rng);
    sort_star_form(f);
    const Matrix u = gen::random_unitary(n, rng);
    const Matrix a = gen::squared_normal_from(f, u);
    for (auto rep : {StarRepresentation::h2, StarRepresentation::triangular}) {
      const StarCanon c = canon_star(a, tol, rep);
      CHECK(star_forms_equal(f, c.form));
      check_star_transform(a, c);
    }
  }
}

TEST_CASE("canon_star rejects generic input") {
  gen::Rng rng(76);
  CHECK_THROWS_AS(canon_star(gen::gaussian(4, 4, rng), tol), PreconditionError);
}

TEST_CASE("assemble star") {
  StarCanonicalForm f;
  f.one_by_one = {I};
  CHECK(assemble_star(f) == Matrix{{I}});
  f = {};
  f.two_by_two = {{2.0, 1.0 / 3.0}};
  CHECK(assemble_star(f) == Matrix{{0.0, 2.0}, {2.0 / 3.0, 0.0}});
  f.two_by_two = {{1.0, -0.25}};
  f.representation = StarRepresentation::triangular;
  CHECK(rel_err(Matrix{{0.5 * I, 0.75}, {0.0, -0.5 * I}}, assemble_star(f)) < 1e-15);
}

TEST_CASE("pearcy criterion") {
  CHECK(pearcy_equal_2x2(Matrix{{0.0, 1.0}, {0.0, 0.0}}, Matrix{{0.0, 0.0}, {1.0, 0.0}}, tol));
  CHECK_FALSE(pearcy_equal_2x2(Matrix::identity(2), Matrix{{1.0, 0.0}, {0.0, -1.0}}, tol));
  const Matrix c1 = h2_block(1.0, 0.5);
  const Matrix c2 = triangular_block(to_triangular({1.0, 0.5}));
  CHECK(pearcy_equal_2x2(c1, c2, tol));
  CHECK(trace(adjoint(c2) * c2).real() == doctest::Approx(1.0 + 0.25));
  gen::Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const Matrix x = gen::gaussian(2, 2, rng);
    const Matrix u = gen::random_unitary(2, rng);
    CHECK(pearcy_equal_2x2(x, u * x * adjoint(u), tol));
    CHECK_FALSE(pearcy_equal_2x2(x, x + Matrix{{0.01, 0.0}, {0.0, 0.0}}, tol));
  }
}

TEST_CASE("involution canon") {
  const InvolutionCanon i3 = canon_involution(Matrix::identity(3), tol);
  CHECK(i3.p == 3);
  CHECK(i3.sigma.empty());
  const InvolutionCanon a = canon_involution(Matrix{{1.0, 1.5}, {0.0, -1.0}}, tol);
  CHECK(a.p == 1);
  REQUIRE(a.sigma.size() == 1);
  CHECK(a.sigma[0] == doctest::Approx(2.0));
  CHECK(rel_err(Matrix{{0.0, 0.5}, {2.0, 0.0}}, a.blocks.assemble()) < 1e-12);
  const InvolutionCanon d = canon_involution(Matrix{{1.0, 0.0}, {0.0, -1.0}}, tol);
  CHECK(d.sigma.empty());
  CHECK(rel_err(Matrix{{1.0, 0.0}, {0.0, -1.0}}, d.blocks.assemble()) < 1e-12);
  gen::Rng rng(78);
  for (int t = 0; t < 10; ++t) {
    const Matrix x = gen::random_involution(2 + rng() % 6, rng);
    for (auto v : {InvolutionVariant::antidiag, InvolutionVariant::triangular}) {
      const InvolutionCanon c = canon_involution(x, tol, v);
      const Matrix b = c.blocks.assemble();
      CHECK(rel_err(Matrix::identity(b.rows()), b * b) < 1e-10);
      CHECK(support::max_abs_diff(support::oracle_singular_values(b), support::oracle_singular_values(x)) < 1e-9);
    }
  }
}

TEST_CASE("hermitian square canon") {
  const StarCanon d = canon_hermitian_square(Matrix{{2.0, 0.0}, {0.0, 3.0 * I}}, tol);
  CHECK(support::multiset_distance(d.form.one_by_one, {2.0, 3.0 * I}) < 1e-12);
  const StarCanon h = canon_hermitian_square(Matrix{{0.0, 1.0}, {0.5, 0.0}}, tol);
  REQUIRE(h.form.two_by_two.size() == 1);
  CHECK(h.form.two_by_two[0].tau == doctest::Approx(1.0));
  CHECK(h.form.two_by_two[0].mu == Complex(0.5));
  gen::Rng rng(79);
  const StarCanon r = canon_hermitian_square(gen::random_hermitian(4, rng), tol);
  CHECK(r.form.two_by_two.empty());
  for (Complex z : r.form.one_by_one) CHECK(z.imag() == 0.0);
}

TEST_CASE("lambda projection canon") {
  const LambdaProjectionCanon p = canon_lambda_projection(Matrix{{1.0, 1.0}, {0.0, 0.0}}, tol);
  REQUIRE(p.blocks.blocks.size() == 1);
  CHECK(rel_err(Matrix{{1.0, 1.0}, {0.0, 0.0}}, p.blocks.assemble()) < 1e-12);
  CHECK(std::abs(p.lambda - 1.0) < 1e-14);
  const LambdaProjectionCanon s = canon_lambda_projection(2.0 * I * Matrix::identity(3), tol);
  CHECK(rel_err(2.0 * I * Matrix::identity(3), s.blocks.assemble()) < 1e-12);
  const LambdaProjectionCanon j = canon_lambda_projection(Matrix{{0.0, 1.0}, {0.0, 0.0}}, tol);
  CHECK(rel_err(Matrix{{0.0, 1.0}, {0.0, 0.0}}, j.blocks.assemble()) < 1e-12);
  gen::Rng rng(80);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + rng() % 6;
    const Complex lam = std::polar(gen::uniform(rng, 0.5, 2.0), gen::uniform(rng, -3.0, 3.0));
    const Matrix a = gen::random_lambda_projection(n, lam, 1 + rng() % (n - 1), rng);
    const LambdaProjectionCanon c = canon_lambda_projection(a, tol);
    CHECK(c.singular_value_residual < 1e-9);
    CHECK(support::max_abs_diff(support::oracle_singular_values(c.blocks.assemble()),
                                support::oracle_singular_values(a)) < 1e-9 * std::max(1.0, spectral_norm(a)));
  }
  gen::Rng r2(81);
  CHECK_THROWS_AS(canon_lambda_projection(gen::gaussian(3, 3, r2), tol), PreconditionError);
}

TEST_CASE("quadratic canon examples") {
  const QuadraticCanon a = canon_quadratic(Matrix{{1.0, 1.0}, {0.0, -1.0}}, tol);
  REQUIRE(a.gamma.size() == 1);
  CHECK(a.gamma[0] == doctest::Approx(1.0));
  CHECK(rel_err(Matrix{{1.0, 1.0}, {0.0, -1.0}}, a.blocks.assemble()) < 1e-12);

  const QuadraticCanon d = canon_quadratic(Matrix::diagonal(std::vector<Complex>{5.0, 5.0, 2.0}), tol);
  CHECK(d.gamma.empty());
  CHECK(rel_err(Matrix::diagonal(std::vector<Complex>{5.0, 5.0, 2.0}), d.blocks.assemble()) < 1e-12);
  CHECK(d.mult1 == 2);

  const QuadraticCanon p = canon_quadratic(Matrix{{1.0, 1.0}, {0.0, 0.0}}, tol);
  REQUIRE(p.gamma.size() == 1);
  CHECK(p.gamma[0] == doctest::Approx(1.0));
  CHECK(rel_err(Matrix{{1.0, 1.0}, {0.0, 0.0}}, p.blocks.assemble()) < 1e-12);
  gen::Rng rng(82);
  CHECK_THROWS_AS(canon_quadratic(gen::gaussian(4, 4, rng), tol), PreconditionError);
}

TEST_CASE("quadratic canon properties") {
  gen::Rng rng(83);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng() % 8, k = 1 + rng() % (n - 1);
    const Complex l1 = std::polar(gen::uniform(rng, 0.5, 2.5), gen::uniform(rng, -3.0, 3.0));
    const Complex l2 = t % 4 == 0 ? -l1 : std::polar(gen::uniform(rng, 0.5, 2.5), gen::uniform(rng, -3.0, 3.0));
    const Matrix a = gen::random_quadratic(n, l1, l2, k, rng);
    const QuadraticCanon q = canon_quadratic(a, tol);
    const Matrix b = q.blocks.assemble();
    CHECK(support::multiset_distance(support::oracle_eigenvalues(b), support::oracle_eigenvalues(a)) < 1e-7);
    CHECK(support::max_abs_diff(q.predicted_singular_values, support::oracle_singular_values(a)) <
          1e-8 * std::max(1.0, spectral_norm(a)));
    CHECK(std::abs(q.lambda1) >= std::abs(q.lambda2) - 1e-9);
    const Matrix u = gen::random_unitary(n, rng);
    CHECK(quadratic_forms_equal(q, canon_quadratic(u * a * adjoint(u), tol)));
  }
}

TEST_CASE("shifted quadratic normal canon") {
  gen::Rng rng(84);
  const Matrix n = gen::random_normal(3, rng);
  const ShiftedQuadraticCanon z = canon_shifted_quadratic_normal(n, 0.0, 0.0, tol);
  CHECK(support::multiset_distance(z.one_by_one, support::oracle_eigenvalues(n)) < 1e-10);

  const Complex a = Complex(0.3, -0.2);
  const Matrix x = a * Matrix::identity(2) + h2_block(1.0, -0.25);
  // b = a^2 leaves N = H2(-1/4)^2
  const ShiftedQuadraticCanon s = canon_shifted_quadratic_normal(x, a, a * a, tol);
  REQUIRE(s.two_by_two.size() == 1);
  CHECK(rel_err(Matrix{{a + 0.5 * I, 0.75}, {0.0, a - 0.5 * I}}, s.blocks.assemble()) < 1e-10);
  CHECK(unitarity_defect(s.transform) < 1e-10);
  CHECK(rel_err(s.blocks.assemble(), s.transform * x * adjoint(s.transform)) < 1e-10);

  const ShiftedQuadraticCanon j = canon_shifted_quadratic_normal(Matrix{{0.0, 1.0}, {0.0, 0.0}}, 0.0, 0.0, tol);
  REQUIRE(j.two_by_two.size() == 1);
  CHECK(std::abs(j.two_by_two[0].nu) < 1e-12);
  CHECK(j.two_by_two[0].r == doctest::Approx(1.0));
}
