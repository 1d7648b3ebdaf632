#pragma once

#include <vector>

#include "canonica/canon_congruence.hpp"
#include "canonica/matrix.hpp"

namespace canonica {

enum class StarRepresentation { h2, triangular };

/// tau * [[0,1],[mu,0]] with |mu| < 1 (mu = 0 for singular blocks)
struct StarPair {
  double tau = 0.0;
  Complex mu;
};

/// [[nu, r],[0, -nu]]
struct TriangularPair {
  Complex nu;
  double r = 0.0;
};

struct StarCanonicalForm {
  std::vector<Complex> one_by_one;
  std::vector<StarPair> two_by_two;
  StarRepresentation representation = StarRepresentation::h2;
  std::size_t dimension() const { return one_by_one.size() + 2 * two_by_two.size(); }
};

struct StarCanon {
  StarCanonicalForm form;
  Matrix transform;  // T A T^* = assemble_star(form)
  double residual = 0.0;
};

/// Square root with Re > 0, or Re = 0 and Im >= 0.
Complex sqrt_dplus(Complex z);

TriangularPair to_triangular(const StarPair& p);
StarPair from_triangular(const TriangularPair& t);

Matrix triangular_block(const TriangularPair& t);
Matrix star_pair_block(const StarPair& p, StarRepresentation rep);

/// A^{-*} A. Throws PreconditionError for singular A.
Matrix star_cosquare(const Matrix& a, const ToleranceConfig& tol);

/// 1x1 by |lambda| desc then arg; 2x2 by tau desc, |mu| desc, arg mu.
void sort_star_form(StarCanonicalForm& f);

Matrix assemble_star(const StarCanonicalForm& f);

StarCanon canon_star(const Matrix& a, const ToleranceConfig& tol,
                     StarRepresentation rep = StarRepresentation::h2);

/// tr, tr X^2 and tr X^*X agree.
bool pearcy_equal_2x2(const Matrix& x, const Matrix& y, const ToleranceConfig& tol);

enum class InvolutionVariant { antidiag, triangular };

struct InvolutionCanon {
  BlockList blocks;            // I_{p-q} (+) -I_{n-p-q} (+) q 2x2 blocks
  std::size_t p = 0;           // multiplicity of +1
  std::vector<double> sigma;   // singular values > 1, descending
};

InvolutionCanon canon_involution(const Matrix& a, const ToleranceConfig& tol,
                                 InvolutionVariant variant = InvolutionVariant::antidiag);

/// canon_star with real/imaginary 1x1 blocks and real mu snapped.
StarCanon canon_hermitian_square(const Matrix& a, const ToleranceConfig& tol);

struct LambdaProjectionCanon {
  BlockList blocks;
  Complex lambda;
  std::size_t m1 = 0;  // nullity
  std::vector<double> tau;
  double singular_value_residual = 0.0;  // top min(m1, n-m1) sigma of A vs A - lambda I
};

LambdaProjectionCanon canon_lambda_projection(const Matrix& a, const ToleranceConfig& tol);

struct QuadraticCanon {
  BlockList blocks;
  Complex lambda1, lambda2;  // |lambda1| >= |lambda2|
  std::size_t mult1 = 0;     // algebraic multiplicity of lambda1
  std::vector<double> sigma; // singular values > |lambda1|
  std::vector<double> gamma;
  std::vector<double> predicted_singular_values;  // descending
  double fit_residual = 0.0;
};

QuadraticCanon canon_quadratic(const Matrix& a, const ToleranceConfig& tol);

struct ShiftedQuadraticCanon {
  Complex a;
  std::vector<Complex> one_by_one;       // lambda + a
  std::vector<TriangularPair> two_by_two;  // (nu, r) of A - aI
  BlockList blocks;                      // [lambda + a] and [[a+nu, r],[0, a-nu]]
  Matrix transform;                      // T A T^* = blocks.assemble()
  double residual = 0.0;
};

ShiftedQuadraticCanon canon_shifted_quadratic_normal(const Matrix& a, Complex shift,
                                                     Complex b, const ToleranceConfig& tol);

}  // namespace canonica
