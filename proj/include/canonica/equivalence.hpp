#pragma once

#include <string>
#include <vector>

#include "canonica/canon_congruence.hpp"
#include "canonica/canon_star.hpp"
#include "canonica/matrix.hpp"
#include "canonica/regularization.hpp"

namespace canonica {

enum class Verdict { equivalent, not_equivalent, unsupported };

const char* to_string(Verdict v);

struct BlockMatch {
  std::string kind;    // "1x1", "2x2", "trace", "eigenvalue", "singular_value"
  std::string lhs, rhs;
  double error = 0.0;  // -1 when unmatched
  bool matched = false;
};

struct EquivalenceReport {
  Verdict verdict = Verdict::unsupported;
  std::string method;  // "canonical_form", "pearcy", "quadratic", "none"
  std::string note;
  std::vector<BlockMatch> blocks;
};

/// Absolute tolerance 1e-7 * max(1, |value|) per block parameter.
inline constexpr double kBlockMatchTol = 1e-7;

bool congruence_forms_equal(const CongruenceCanonicalForm& x, const CongruenceCanonicalForm& y,
                            double match_tol = kBlockMatchTol,
                            std::vector<BlockMatch>* report = nullptr);
bool star_forms_equal(const StarCanonicalForm& x, const StarCanonicalForm& y,
                      double match_tol = kBlockMatchTol, std::vector<BlockMatch>* report = nullptr);
bool quadratic_forms_equal(const QuadraticCanon& x, const QuadraticCanon& y,
                           double match_tol = kBlockMatchTol);

/// Same eigenvalues (with multiplicity) and singular values.
bool quadratic_invariants_equal(const QuadraticCanon& x, const QuadraticCanon& y,
                                const Matrix& a, const Matrix& b, double match_tol = kBlockMatchTol,
                                std::vector<BlockMatch>* report = nullptr);

EquivalenceReport decide_unitary_congruence(const Matrix& a, const Matrix& b,
                                            const ToleranceConfig& tol);
EquivalenceReport decide_unitary_star_congruence(const Matrix& a, const Matrix& b,
                                                 const ToleranceConfig& tol);

/// Involutions are unitarily *congruent iff singular values and the +1
/// multiplicity agree.
Verdict decide_involutions(const Matrix& a, const Matrix& b, const ToleranceConfig& tol);

struct UpgradeResult {
  Matrix W;
  double hypothesis_residual = 0.0;
  double residual = 0.0;  // A vs W B W^T (or W B W^*)
  bool weak_hypothesis = false;
};

/// W from the right polar factor of S, verified before returning.
UpgradeResult upgrade_congruence_to_unitary(const Matrix& a, const Matrix& b, const Matrix& s,
                                            CongruenceMode mode, const ToleranceConfig& tol);

struct Ray {
  double theta = 0.0;  // (0, pi]
  std::size_t count = 0;
};

struct RaySignature {
  std::vector<Ray> rays;  // ascending theta, count per 2x2 block
  std::size_t positive_count = 0;
  std::size_t zero_count = 0;
};

RaySignature congruence_class_signature(const Matrix& a, const ToleranceConfig& tol);
bool signatures_equal(const RaySignature& x, const RaySignature& y, double angle_tol = kBlockMatchTol);

}  // namespace canonica
