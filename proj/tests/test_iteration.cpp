#include <doctest.h>

#include <cmath>
#include <numbers>

#include "canonica/canon_congruence.hpp"
#include "canonica/error.hpp"
#include "canonica/iteration.hpp"
#include "support.hpp"

using namespace canonica;

namespace {
const ToleranceConfig tol;
const std::vector<Complex> e1{1.0, 0.0};
}  // namespace

TEST_CASE("classifier examples") {
  CHECK(classify_bounded(Matrix::identity(3), IterationMode::transpose, tol).verdict == Boundedness::bounded);
  const BoundednessReport r =
      classify_bounded(h2_block(1.0, std::polar(1.0, std::numbers::pi / 3)), IterationMode::transpose, tol);
  CHECK(r.verdict == Boundedness::bounded);
  CHECK(r.fast_path);
  const BoundednessReport u = classify_bounded(h2_block(1.0, 2.0), IterationMode::transpose, tol);
  CHECK(u.verdict == Boundedness::unbounded);
  CHECK(u.max_modulus == doctest::Approx(2.0));
  CHECK(u.min_modulus == doctest::Approx(0.5));
  CHECK(classify_bounded(Matrix::identity(2), IterationMode::star, tol).verdict == Boundedness::bounded);
  CHECK_THROWS_AS(classify_bounded(Matrix(2, 2), IterationMode::transpose, tol), PreconditionError);
}

TEST_CASE("simulation examples") {
  const IterationTrace t = simulate(Matrix::identity(2), e1, 10, IterationMode::transpose);
  REQUIRE(t.norms.size() == 11);
  for (double v : t.norms) CHECK(v == doctest::Approx(1.0));
  CHECK(t.growth == Growth::bounded);

  const IterationTrace h = simulate(h2_block(1.0, 2.0), e1, 40, IterationMode::transpose);
  CHECK(h.growth == Growth::unbounded);
  CHECK(h.norms.back() >= std::pow(2.0, 19));

  gen::Rng rng(101);
  const double th = 0.9;
  const Matrix q{{std::cos(th), std::sin(th)}, {-std::sin(th), std::cos(th)}};
  const Matrix s = gen::random_nonsingular(2, rng, 5.0);
  const IterationTrace b = simulate(s * q * transpose(s), e1, 1000, IterationMode::transpose);
  CHECK(b.growth == Growth::bounded);
  CHECK(b.norms.size() == 1001);
}

TEST_CASE("simulation follows the recurrence") {
  gen::Rng rng(102);
  const Matrix a = gen::random_nonsingular(3, rng);
  const std::vector<Complex> x0{1.0, Complex(0.0, 1.0), -2.0};
  for (auto mode : {IterationMode::transpose, IterationMode::star}) {
    const IterationTrace t = simulate(a, x0, 5, mode);
    // x1 = -(A^T)^{-1} A x0
    const Matrix lhs = mode == IterationMode::transpose ? transpose(a) : adjoint(a);
    const Matrix x1 = -solve(lhs, a * Matrix::column_vector(x0));
    CHECK(t.norms[1] == doctest::Approx(frobenius_norm(x1)).epsilon(1e-12));
  }
}

TEST_CASE("classifier agrees with simulation on random classes") {
  gen::Rng rng(103);
  for (int t = 0; t < 12; ++t) {
    const std::size_t n = 2 * (1 + rng() % 3);
    const Matrix u = gen::random_unitary(n, rng);
    std::vector<Matrix> blocks;
    for (std::size_t k = 0; k < n / 2; ++k) blocks.push_back(h2_block(gen::uniform(rng, 0.5, 2.0), gen::unit_complex(rng)));
    const Matrix bounded = u * direct_sum(blocks) * transpose(u);
    CHECK(classify_bounded(bounded, IterationMode::transpose, tol).verdict == Boundedness::bounded);
    std::vector<Complex> x0(n);
    for (auto& z : x0) z = gen::gaussian_complex(rng);
    CHECK(simulate(bounded, x0, 400, IterationMode::transpose).growth == Growth::bounded);

    blocks[0] = h2_block(1.0, 1.5);
    const Matrix unbounded = u * direct_sum(blocks) * transpose(u);
    CHECK(classify_bounded(unbounded, IterationMode::transpose, tol).verdict == Boundedness::unbounded);
    CHECK(simulate(unbounded, x0, 400, IterationMode::transpose).growth == Growth::unbounded);
  }
}

TEST_CASE("unsupported outside the class when spectrum is unimodular") {
  // cosquare of a Jordan-type matrix: unimodular but not diagonalizable
  const Matrix a{{1.0, 1.0}, {0.0, 1.0}};
  const BoundednessReport r = classify_bounded(a, IterationMode::transpose, tol);
  CHECK_FALSE(r.fast_path);
  CHECK(r.verdict == Boundedness::unsupported);
}

TEST_CASE("growth names") {
  CHECK(std::string(to_string(Growth::inconclusive)) == "inconclusive");
  CHECK(std::string(to_string(Boundedness::unbounded)) == "unbounded");
}
