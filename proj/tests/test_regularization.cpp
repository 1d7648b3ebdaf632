#include <doctest.h>

#include "canonica/canon_congruence.hpp"
#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/regularization.hpp"
#include "support.hpp"

using namespace canonica;
using support::rel_err;

namespace {
const ToleranceConfig tol;
const Complex I(0.0, 1.0);
const Matrix J2{{0.0, 1.0}, {0.0, 0.0}};
}  // namespace

TEST_CASE("regularize J2 in star mode") {
  const ReducedForm r = regularize(J2, CongruenceMode::star, tol);
  CHECK(r.m1 == 1);
  CHECK(r.m2 == 1);
  REQUIRE(r.sigma.size() == 1);
  CHECK(r.sigma[0] == doctest::Approx(1.0));
  CHECK(rel_err(J2, r.assemble()) < 1e-14);
  CHECK(rel_err(r.assemble(), apply_congruence(r.transform, J2, CongruenceMode::star)) < 1e-14);
}

TEST_CASE("regularize nonsingular and zero") {
  gen::Rng rng(51);
  const Matrix a = gen::random_nonsingular(4, rng);
  for (auto mode : {CongruenceMode::congruence, CongruenceMode::star}) {
    const ReducedForm r = regularize(a, mode, tol);
    CHECK(r.m1 == 0);
    CHECK(r.m2 == 0);
    CHECK(r.core == a);
    CHECK(r.transform == Matrix::identity(4));
    const ReducedForm z = regularize(Matrix(3, 3), mode, tol);
    CHECK(z.m1 == 3);
    CHECK(z.m2 == 0);
    CHECK(z.core.empty());
    CHECK(z.assemble() == Matrix(3, 3));
  }
}

TEST_CASE("regularize random singular matrices") {
  gen::Rng rng(52);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 3 + rng() % 6, k = 1 + rng() % (n - 1);
    Matrix a = gen::gaussian(n, n, rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) a(i, j) = 0.0;
    const Matrix u = gen::random_unitary(n, rng);
    a = u * a * adjoint(u);
    for (auto mode : {CongruenceMode::congruence, CongruenceMode::star}) {
      const ReducedForm r = regularize(a, mode, tol);
      CHECK(r.m1 == k);
      CHECK(unitarity_defect(r.transform) < 1e-11);
      CHECK(rel_err(r.assemble(), apply_congruence(r.transform, a, mode)) < 1e-11);
      CHECK(r.residual < 1e-11);
      // zero border rows, [S 0] in the bordered columns
      const Matrix asm_ = r.assemble();
      const std::size_t lead = n - r.m1 - r.m2;
      CHECK(frobenius_norm(asm_.block(n - r.m1, 0, r.m1, n)) < 1e-12);
      CHECK(frobenius_norm(asm_.block(0, n - r.m1, lead, r.m1)) < 1e-12);
      Matrix s(r.m2, r.m1);
      for (std::size_t i = 0; i < r.m2; ++i) s(i, i) = r.sigma[i];
      CHECK(rel_err(s, asm_.block(lead, n - r.m1, r.m2, r.m1)) < 1e-12);
      CHECK(rel_err(asm_, apply_congruence(r.transform, a, mode)) < 1e-11);
      CHECK(r.a_prime().rows() == n - r.m1 - r.m2);
    }
  }
}

TEST_CASE("split regular singular examples") {
  const Matrix a = direct_sum(J2, Matrix{{5.0}});
  const RegularSplit s = split_regular_singular(a, CongruenceMode::star, tol);
  REQUIRE(s.regular.has_value());
  CHECK(s.regular->rows() == 1);
  CHECK(std::abs(std::abs((*s.regular)(0, 0)) - 5.0) < 1e-12);
  REQUIRE(s.singular_sigmas.size() == 1);
  CHECK(s.singular_sigmas[0] == doctest::Approx(1.0));
  CHECK(s.zero_count == 0);

  for (auto mode : {CongruenceMode::congruence, CongruenceMode::star}) {
    const RegularSplit z = split_regular_singular(Matrix(2, 2), mode, tol);
    CHECK_FALSE(z.regular.has_value());
    CHECK(z.singular_sigmas.empty());
    CHECK(z.zero_count == 2);
  }

  gen::Rng rng(53);
  const Matrix u = gen::random_unitary(4, rng);
  const Matrix b = u * direct_sum(h2_block(1.0, I), 3.0 * J2) * transpose(u);
  const RegularSplit c = split_regular_singular(b, CongruenceMode::congruence, tol);
  REQUIRE(c.regular.has_value());
  const CongruenceCanon reg = canon_congruence(*c.regular, tol);
  REQUIRE(reg.form.two_by_two.size() == 1);
  CHECK(reg.form.two_by_two[0].tau == doctest::Approx(1.0));
  CHECK(std::abs(reg.form.two_by_two[0].mu - I) < 1e-9);
  REQUIRE(c.singular_sigmas.size() == 1);
  CHECK(c.singular_sigmas[0] == doctest::Approx(3.0));
  CHECK(c.zero_count == 0);
  CHECK(rel_err(c.assemble(), apply_congruence(c.transform, b, CongruenceMode::congruence)) < 1e-11);
}

TEST_CASE("split rejects out of class input") {
  gen::Rng rng(54);
  CHECK_THROWS_AS(split_regular_singular(gen::gaussian(4, 4, rng), CongruenceMode::congruence, tol),
                  PreconditionError);
  CHECK_THROWS_AS(split_regular_singular(gen::gaussian(4, 4, rng), CongruenceMode::star, tol),
                  PreconditionError);
}
