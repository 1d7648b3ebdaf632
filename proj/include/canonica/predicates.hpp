#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "canonica/matrix.hpp"

namespace canonica {

/// Class membership flags with the residual that decided each one.
/// A flag is set iff its residual <= residual_rtol.
struct ClassReport {
  bool normal = false;
  bool conjugate_normal = false;
  bool congruence_normal = false;
  bool squared_normal = false;
  bool unitary = false;
  bool coninvolutory = false;
  bool involutory = false;
  bool hermitian_square = false;       // A^2 Hermitian
  bool conj_square_hermitian = false;  // conj(A) A Hermitian
  bool range_hermitian = false;
  std::optional<Complex> lambda_projection;  // set iff A^2 = lambda A
  std::map<std::string, double> residuals;
};

// defining residuals, relative
double normal_residual(const Matrix& a);
double conjugate_normal_residual(const Matrix& a);
double congruence_normal_residual(const Matrix& a);
double squared_normal_residual(const Matrix& a);
double unitary_residual(const Matrix& a);
double coninvolutory_residual(const Matrix& a);
double involutory_residual(const Matrix& a);
double hermitian_square_residual(const Matrix& a);
double conj_square_hermitian_residual(const Matrix& a);
double range_hermitian_residual(const Matrix& a, const ToleranceConfig& tol);

/// tr(A^2)/tr(A), or 0 when the trace vanishes at tolerance.
Complex lambda_projection_candidate(const Matrix& a, const ToleranceConfig& tol);

/// Throws DimensionError for non-square input.
ClassReport classify(const Matrix& a, const ToleranceConfig& tol);

bool is_normal(const Matrix& a, const ToleranceConfig& tol);
bool is_conjugate_normal(const Matrix& a, const ToleranceConfig& tol);
bool is_congruence_normal(const Matrix& a, const ToleranceConfig& tol);
bool is_squared_normal(const Matrix& a, const ToleranceConfig& tol);
bool is_unitary(const Matrix& a, const ToleranceConfig& tol);
bool is_nonsingular(const Matrix& a, const ToleranceConfig& tol);

enum class CharacterizationSet {
  congruence_normal_idents,
  squared_normal_idents,
  conjugate_normal_afd,
  congruence_normal_afd,
};

struct ConditionCheck {
  std::string name;  // "a", "b", ...
  double residual = 0.0;
  bool holds = false;
  bool applicable = true;  // false: evaluated but not expected to agree (singular input)
};

struct CharacterizationReport {
  CharacterizationSet which{};
  std::vector<ConditionCheck> conditions;
  bool all_agree = false;  // over applicable conditions
};

/// Evaluates each listed equivalent condition independently.
CharacterizationReport verify_characterizations(const Matrix& a, CharacterizationSet which,
                                                const ToleranceConfig& tol);

/// [[0, A], [conj(A), 0]]
Matrix bar_double(const Matrix& a);

struct DualityCheck {
  std::string name;
  bool lhs = false;
  bool rhs = false;
  double lhs_residual = 0.0;
  double rhs_residual = 0.0;
  bool agree() const { return lhs == rhs; }
};

/// The eight dualities between A and its bar double ((g),(h) only when A is
/// nonsingular; each of those expands to normal / Hermitian / unitary).
std::vector<DualityCheck> verify_bar_blocks(const Matrix& a, const ToleranceConfig& tol);

}  // namespace canonica
