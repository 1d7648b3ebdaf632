#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "support.hpp"

using namespace canonica;
using support::rel_err;

namespace {
const ToleranceConfig tol;
const Complex I(0.0, 1.0);

Matrix from_svd(const SvdResult& s, std::size_t m, std::size_t n) {
  Matrix d(m, n);
  for (std::size_t k = 0; k < s.sigma.size(); ++k) d(k, k) = s.sigma[k];
  return s.U * d * adjoint(s.V);
}
}  // namespace

TEST_CASE("svd examples") {
  CHECK(singular_values(Matrix::identity(4)) == std::vector<double>{1, 1, 1, 1});
  const auto s = singular_values(Matrix{{0.0, 1.0}, {0.0, 0.0}});
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] == doctest::Approx(0.0));
  const auto t = singular_values(Matrix{{0.0, 0.5}, {2.0, 0.0}});
  CHECK(t[0] == doctest::Approx(2.0));
  CHECK(t[1] == doctest::Approx(0.5));
}

TEST_CASE("svd against Eigen and reconstruction") {
  gen::Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 1 + rng() % 9, n = 1 + rng() % 9;
    Matrix a = gen::gaussian(m, n, rng);
    if (trial % 3 == 0 && n > 1) a.set_column(n - 1, a.column_values(0));  // rank deficient
    const SvdResult s = svd(a);
    CHECK(support::max_abs_diff(s.sigma, support::oracle_singular_values(a)) < 1e-12 * std::max(1.0, s.sigma[0]));
    CHECK(std::is_sorted(s.sigma.rbegin(), s.sigma.rend()));
    CHECK(unitarity_defect(s.U) < 1e-12);
    CHECK(unitarity_defect(s.V) < 1e-12);
    CHECK(rel_err(a, from_svd(s, m, n)) < 1e-12);
  }
}

TEST_CASE("svd is deterministic") {
  gen::Rng rng(22);
  const Matrix a = gen::gaussian(20, 20, rng);
  const SvdResult x = svd(a), y = svd(a);
  CHECK(x.U == y.U);
  CHECK(x.V == y.V);
  CHECK(x.sigma == y.sigma);
}

TEST_CASE("svd sweep cap raises convergence error") {
  gen::Rng rng(23);
  CHECK_THROWS_AS(svd(gen::gaussian(8, 8, rng), 1), ConvergenceError);
}

TEST_CASE("rank") {
  CHECK(rank(Matrix{{1.0, 0.0}, {0.0, 0.0}}, tol) == 1);
  CHECK(rank(Matrix(3, 3), tol) == 0);
  CHECK(rank(Matrix::identity(5), tol) == 5);
  CHECK(rank(Matrix{{1.0, 0.0}, {0.0, 1e-14}}, tol) == 1);
}

TEST_CASE("eigh against Eigen") {
  gen::Rng rng(24);
  for (std::size_t n : {1u, 2u, 5u, 12u}) {
    const Matrix h = gen::random_hermitian(n, rng);
    const HermitianEig e = eigh(h);
    Eigen::SelfAdjointEigenSolver<support::EMat> ref(support::to_eigen(h));
    for (std::size_t k = 0; k < n; ++k)
      CHECK(e.w[k] == doctest::Approx(ref.eigenvalues()(static_cast<Eigen::Index>(k))).epsilon(1e-11));
    CHECK(unitarity_defect(e.U) < 1e-12);
    CHECK(rel_err(h, e.U * Matrix::diagonal(std::span<const double>(e.w)) * adjoint(e.U)) < 1e-12);
  }
}

TEST_CASE("eig_normal examples") {
  const NormalEig d = eig_normal(Matrix{{2.0, 0.0}, {0.0, -3.0 * I}}, tol);
  CHECK(support::multiset_distance(d.lambda, {2.0, -3.0 * I}) < 1e-13);
  const NormalEig f = eig_normal(Matrix{{0.0, 1.0}, {1.0, 0.0}}, tol);
  CHECK(support::multiset_distance(f.lambda, {1.0, -1.0}) < 1e-13);
  const NormalEig g = eig_normal(Matrix{{I, 0.0}, {0.0, -I}}, tol);
  CHECK(support::multiset_distance(g.lambda, {I, -I}) < 1e-13);
  CHECK_THROWS_AS(eig_normal(Matrix{{0.0, 1.0}, {0.0, 0.0}}, tol), PreconditionError);
}

TEST_CASE("eig_normal on random normal matrices") {
  gen::Rng rng(25);
  for (std::size_t n : {2u, 6u, 11u}) {
    const Matrix a = gen::random_normal(n, rng);
    const NormalEig e = eig_normal(a, tol);
    CHECK(support::multiset_distance(e.lambda, support::oracle_eigenvalues(a)) < 1e-11);
    CHECK(unitarity_defect(e.U) < 1e-11);
    CHECK(e.residual < 1e-12);
  }
  // repeated eigenvalues
  const Matrix u = gen::random_unitary(4, rng);
  const std::vector<Complex> d{I, I, 2.0, 2.0};
  const NormalEig r = eig_normal(u * Matrix::diagonal(std::span<const Complex>(d)) * adjoint(u), tol);
  CHECK(support::multiset_distance(r.lambda, d) < 1e-11);
}

TEST_CASE("eigvals_general against Eigen") {
  gen::Rng rng(26);
  for (std::size_t n : {1u, 3u, 8u, 15u}) {
    const Matrix a = gen::gaussian(n, n, rng);
    CHECK(support::multiset_distance(eigvals_general(a), support::oracle_eigenvalues(a)) < 1e-9);
  }
}

TEST_CASE("polar examples") {
  gen::Rng rng(27);
  const Matrix u = gen::random_unitary(3, rng);
  const PolarResult pu = polar(u, PolarSide::right);
  CHECK(rel_err(u, pu.W) < 1e-12);
  CHECK(rel_err(Matrix::identity(3), pu.Q) < 1e-12);
  const PolarResult pd = polar(Matrix{{2.0, 0.0}, {0.0, 3.0}}, PolarSide::right);
  CHECK(rel_err(Matrix::identity(2), pd.W) < 1e-12);
  CHECK(rel_err(Matrix{{2.0, 0.0}, {0.0, 3.0}}, pd.Q) < 1e-12);
  const Matrix v = gen::random_unitary(2, rng);
  CHECK(rel_err(v, polar(v * Matrix{{2.0, 0.0}, {0.0, 0.5}}, PolarSide::right).W) < 1e-12);
}

TEST_CASE("polar against Eigen svd oracle") {
  gen::Rng rng(28);
  for (std::size_t n : {2u, 5u, 9u}) {
    const Matrix a = gen::random_nonsingular(n, rng, 20.0);
    Eigen::JacobiSVD<support::EMat> s(support::to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix w_ref = support::from_eigen(s.matrixU() * s.matrixV().adjoint());
    for (PolarSide side : {PolarSide::right, PolarSide::left}) {
      const PolarResult p = polar(a, side);
      CHECK(rel_err(w_ref, p.W) < 1e-11);
      const Matrix back = side == PolarSide::right ? p.W * p.Q : p.Q * p.W;
      CHECK(rel_err(a, back) < 1e-12);
      CHECK(rel_err(p.Q, adjoint(p.Q)) < 1e-12);
    }
  }
}

TEST_CASE("takagi") {
  const TakagiResult d = takagi_symmetric(Matrix{{3.0, 0.0}, {0.0, 1.0}}, tol);
  CHECK(d.sigma[0] == doctest::Approx(3.0));
  CHECK(d.sigma[1] == doctest::Approx(1.0));
  const Matrix flip{{0.0, 1.0}, {1.0, 0.0}};
  const TakagiResult f = takagi_symmetric(flip, tol);
  CHECK(support::max_abs_diff(f.sigma, {1.0, 1.0}) < 1e-13);
  CHECK(rel_err(flip, f.V * Matrix::diagonal(std::span<const double>(f.sigma)) * transpose(f.V)) < 1e-12);
  gen::Rng rng(29);
  const Matrix w = gen::random_unitary(2, rng);
  const TakagiResult r = takagi_symmetric(w * Matrix{{2.0, 0.0}, {0.0, 1.0}} * transpose(w), tol);
  CHECK(r.sigma[0] == doctest::Approx(2.0));
  CHECK(r.sigma[1] == doctest::Approx(1.0));
  for (std::size_t n : {3u, 6u, 10u}) {
    const Matrix g = gen::gaussian(n, n, rng);
    const Matrix s = g + transpose(g);
    const TakagiResult t = takagi_symmetric(s, tol);
    CHECK(unitarity_defect(t.V) < 1e-10);
    CHECK(rel_err(s, t.V * Matrix::diagonal(std::span<const double>(t.sigma)) * transpose(t.V)) < 1e-11);
    CHECK(support::max_abs_diff(t.sigma, support::oracle_singular_values(s)) < 1e-10);
  }
  CHECK_THROWS_AS(takagi_symmetric(Matrix{{0.0, 1.0}, {2.0, 0.0}}, tol), PreconditionError);
}

TEST_CASE("hua") {
  const HuaResult c = hua_skew(Matrix{{0.0, 2.0}, {-2.0, 0.0}}, tol);
  REQUIRE(c.tau.size() == 1);
  CHECK(c.tau[0] == doctest::Approx(2.0));
  gen::Rng rng(30);
  const Matrix j{{0.0, 1.0}, {-1.0, 0.0}};
  const Matrix u = gen::random_unitary(4, rng);
  const HuaResult h = hua_skew(u * direct_sum(j, 3.0 * j) * transpose(u), tol);
  REQUIRE(h.tau.size() == 2);
  std::vector<double> t = h.tau;
  std::sort(t.begin(), t.end());
  CHECK(t[0] == doctest::Approx(1.0));
  CHECK(t[1] == doctest::Approx(3.0));
  CHECK_THROWS_AS(hua_skew(Matrix{{0.0, 1.0}, {1.0, 0.0}}, tol), PreconditionError);
  CHECK_THROWS_AS(hua_skew(Matrix(3, 3), tol), PreconditionError);
}

TEST_CASE("range and null bases") {
  const RangeNullBases p = range_null_bases(Matrix{{1.0, 0.0}, {0.0, 0.0}}, tol);
  REQUIRE(p.V1.cols() == 1);
  REQUIRE(p.V2.cols() == 1);
  CHECK(std::abs(p.V1(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(p.V2(1, 0)) == doctest::Approx(1.0));
  gen::Rng rng(31);
  CHECK(range_null_bases(gen::random_nonsingular(4, rng), tol).V2.cols() == 0);
  const RangeNullBases z = range_null_bases(Matrix(3, 3), tol);
  CHECK(z.V1.cols() == 0);
  CHECK(unitarity_defect(z.V2) < 1e-14);
}

TEST_CASE("cluster_values") {
  const std::vector<Complex> v{1.0, 2.0, 1.0 + 1e-12, 3.0, 2.0 - 1e-12};
  const auto c = cluster_values(v, 1e-9);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == std::vector<std::size_t>{0, 2});
  CHECK(c[1] == std::vector<std::size_t>{1, 4});
  CHECK(c[2] == std::vector<std::size_t>{3});
}

TEST_CASE("complete_unitary") {
  gen::Rng rng(32);
  const Matrix u = gen::random_unitary(6, rng);
  const Matrix q = u.block(0, 0, 6, 2);
  const Matrix full = complete_unitary(q);
  CHECK(unitarity_defect(full) < 1e-12);
  CHECK(full.block(0, 0, 6, 2) == q);
}
