#pragma once

#include <cstdint>
#include <random>

#include "canonica/canon_congruence.hpp"
#include "canonica/canon_star.hpp"
#include "canonica/matrix.hpp"

// Seeded random constructors for every matrix family the library treats.
namespace canonica::gen {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
Complex gaussian_complex(Rng& rng);
Complex unit_complex(Rng& rng);

Matrix gaussian(std::size_t rows, std::size_t cols, Rng& rng);
Matrix random_unitary(std::size_t n, Rng& rng);
Matrix random_hermitian(std::size_t n, Rng& rng);
/// U diag(s) V^* with s log-uniform in [1/sqrt(cond), sqrt(cond)]
Matrix random_nonsingular(std::size_t n, Rng& rng, double cond = 10.0);

Matrix random_normal(std::size_t n, Rng& rng);
Matrix random_conjugate_normal(std::size_t n, Rng& rng, bool allow_singular = true);
Matrix random_involution(std::size_t n, Rng& rng);
Matrix random_coninvolutory(std::size_t n, Rng& rng);
Matrix random_lambda_projection(std::size_t n, Complex lambda, std::size_t rank, Rng& rng);
/// S diag(l1 I_k, l2 I_{n-k}) S^{-1}
Matrix random_quadratic(std::size_t n, Complex l1, Complex l2, std::size_t k, Rng& rng);

struct FormOptions {
  bool allow_singular = true;
  bool allow_repeats = true;
};

/// Normalized congruence form (sigma > 0 or 0; tau H2(mu) with 0 <= |mu| < 1,
/// |mu| = 1 with Im mu > 0, or mu = -1) of exact dimension n.
CongruenceCanonicalForm random_congruence_form(std::size_t n, Rng& rng, FormOptions opt = {});
/// Form with unimodular mu only (conjugate-normal canonical pieces).
CongruenceCanonicalForm random_conjugate_normal_form(std::size_t n, Rng& rng, FormOptions opt = {});
StarCanonicalForm random_star_form(std::size_t n, Rng& rng, FormOptions opt = {});

Matrix congruence_normal_from(const CongruenceCanonicalForm& f, const Matrix& u);
Matrix squared_normal_from(const StarCanonicalForm& f, const Matrix& u);

Matrix random_congruence_normal(std::size_t n, Rng& rng, FormOptions opt = {});
Matrix random_squared_normal(std::size_t n, Rng& rng, FormOptions opt = {});

}  // namespace canonica::gen
