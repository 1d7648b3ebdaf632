#include "canonica/predicates.hpp"

#include <algorithm>
#include <cmath>

#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"

namespace canonica {

namespace {

void require_square(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("matrix must be square");
}

double normal_of(const Matrix& m) {
  const Matrix mh = adjoint(m);
  return relative_residual(m * mh, mh * m);
}

}  // namespace

double normal_residual(const Matrix& a) { return normal_of(a); }

double conjugate_normal_residual(const Matrix& a) {
  return relative_residual(adjoint(a) * a, conj(a * adjoint(a)));
}

double congruence_normal_residual(const Matrix& a) { return normal_of(conj(a) * a); }

double squared_normal_residual(const Matrix& a) { return normal_of(a * a); }

double unitary_residual(const Matrix& a) {
  return relative_residual(adjoint(a) * a, Matrix::identity(a.cols()));
}

double coninvolutory_residual(const Matrix& a) {
  return relative_residual(conj(a) * a, Matrix::identity(a.cols()));
}

double involutory_residual(const Matrix& a) {
  return relative_residual(a * a, Matrix::identity(a.cols()));
}

double hermitian_square_residual(const Matrix& a) {
  const Matrix s = a * a;
  return relative_residual(s, adjoint(s));
}

double conj_square_hermitian_residual(const Matrix& a) {
  const Matrix s = conj(a) * a;
  return relative_residual(s, adjoint(s));
}

double range_hermitian_residual(const Matrix& a, const ToleranceConfig& tol) {
  const Matrix v = range_null_bases(a, tol).V1;
  const Matrix w = range_null_bases(adjoint(a), tol).V1;
  if (v.cols() != w.cols()) return 1.0;
  return relative_residual(v * adjoint(v), w * adjoint(w));
}

Complex lambda_projection_candidate(const Matrix& a, const ToleranceConfig& tol) {
  const Complex t = trace(a);
  const double scale = std::max(1.0, frobenius_norm(a)) * static_cast<double>(a.rows());
  if (std::abs(t) <= tol.residual_rtol * scale) return 0.0;
  return trace(a * a) / t;
}

bool is_normal(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  return normal_residual(a) <= tol.residual_rtol;
}
bool is_conjugate_normal(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  return conjugate_normal_residual(a) <= tol.residual_rtol;
}
bool is_congruence_normal(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  return congruence_normal_residual(a) <= tol.residual_rtol;
}
bool is_squared_normal(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  return squared_normal_residual(a) <= tol.residual_rtol;
}
bool is_unitary(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  return unitary_residual(a) <= tol.residual_rtol;
}
bool is_nonsingular(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  return rank(a, tol) == a.rows();
}

ClassReport classify(const Matrix& a, const ToleranceConfig& tol) {
  require_square(a);
  ClassReport r;
  auto& res = r.residuals;
  res["normal"] = normal_residual(a);
  res["conjugate_normal"] = conjugate_normal_residual(a);
  res["congruence_normal"] = congruence_normal_residual(a);
  res["squared_normal"] = squared_normal_residual(a);
  res["unitary"] = unitary_residual(a);
  res["coninvolutory"] = coninvolutory_residual(a);
  res["involutory"] = involutory_residual(a);
  res["hermitian_square"] = hermitian_square_residual(a);
  res["conj_square_hermitian"] = conj_square_hermitian_residual(a);
  res["range_hermitian"] = range_hermitian_residual(a, tol);
  const Complex lam = lambda_projection_candidate(a, tol);
  res["lambda_projection"] = relative_residual(a * a, lam * a);

  const double t = tol.residual_rtol;
  r.normal = res["normal"] <= t;
  r.conjugate_normal = res["conjugate_normal"] <= t;
  r.congruence_normal = res["congruence_normal"] <= t;
  r.squared_normal = res["squared_normal"] <= t;
  r.unitary = res["unitary"] <= t;
  r.coninvolutory = res["coninvolutory"] <= t;
  r.involutory = res["involutory"] <= t;
  r.hermitian_square = res["hermitian_square"] <= t;
  r.conj_square_hermitian = res["conj_square_hermitian"] <= t;
  r.range_hermitian = res["range_hermitian"] <= t;
  if (res["lambda_projection"] <= t) r.lambda_projection = lam;
  return r;
}

Matrix bar_double(const Matrix& a) {
  require_square(a);
  const std::size_t n = a.rows();
  Matrix b(2 * n, 2 * n);
  b.set_block(0, n, a);
  b.set_block(n, 0, conj(a));
  return b;
}

}  // namespace canonica
