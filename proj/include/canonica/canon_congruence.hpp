#pragma once

#include <vector>

#include "canonica/matrix.hpp"

namespace canonica {

/// tau * [[0, 1], [mu, 0]]
struct CongruencePair {
  double tau = 0.0;
  Complex mu;
};

/// Direct sum of [sigma] blocks and tau*H2(mu) blocks. Zero blocks are
/// sigma = 0 entries; singular 2x2 blocks have mu = 0.
struct CongruenceCanonicalForm {
  std::vector<double> one_by_one;
  std::vector<CongruencePair> two_by_two;
  std::size_t dimension() const { return one_by_one.size() + 2 * two_by_two.size(); }
};

struct CongruenceCanon {
  CongruenceCanonicalForm form;
  Matrix transform;       // T A T^T = assemble_congruence(form)
  double residual = 0.0;  // relative
};

/// Small dense block list, assembled as a direct sum in order.
struct BlockList {
  std::vector<Matrix> blocks;
  Matrix assemble() const;
  std::size_t dimension() const;
};

Matrix h2_block(double tau, Complex mu);

/// A^{-T} A. Throws PreconditionError when A is singular at rank_rtol.
Matrix cosquare(const Matrix& a, const ToleranceConfig& tol);

/// Representative of the {mu, 1/mu} orbit, rescaling tau to keep the
/// block's congruence class: |mu| > 1 maps (tau, mu) to (tau |mu|, 1/mu);
/// on the unit circle the representative has Im > 0 (or is -1).
CongruencePair normalize_congruence_pair(CongruencePair p, double unit_tol);

/// Canonical order: [sigma] descending; pairs by tau desc, arg mu asc, |mu| asc.
void sort_congruence_form(CongruenceCanonicalForm& f);

Matrix assemble_congruence(const CongruenceCanonicalForm& f);

CongruenceCanon canon_congruence(const Matrix& a, const ToleranceConfig& tol);

/// Spectrum-only form for conjugate-normal A.
CongruenceCanonicalForm canon_conjugate_normal(const Matrix& a, const ToleranceConfig& tol);

enum class UnitaryStyle { h2, real_orthogonal, hermitian_unitary };

[[nodiscard]] Matrix real_orthogonal_block(double theta);
[[nodiscard]] Matrix hermitian_unitary_block(double theta);

struct UnitaryCanon {
  BlockList blocks;           // I_{n-2q} as 1x1 ones, then q 2x2 blocks
  std::vector<double> theta;  // one per 2x2 block, in (0, pi]
  Matrix transform;           // T U T^T = blocks.assemble()
  double residual = 0.0;
};

UnitaryCanon canon_unitary(const Matrix& u, UnitaryStyle style, const ToleranceConfig& tol);

CongruenceCanonicalForm canon_coninvolutory(const Matrix& a, const ToleranceConfig& tol);

CongruenceCanon canon_hermitian_cosquare(const Matrix& a, const ToleranceConfig& tol);

}  // namespace canonica
