#include "canonica/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/kernels.hpp"

namespace canonica {

void ToleranceConfig::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0))
      throw PreconditionError(std::string("tolerance ") + name + " must lie in (0, 1)");
  };
  check(rank_rtol, "rank_rtol");
  check(residual_rtol, "residual_rtol");
  check(cluster_rtol, "cluster_rtol");
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    throw DimensionError("entry count " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::column_vector(std::span<const Complex> v) {
  return Matrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

std::vector<Complex> Matrix::column_values(std::size_t j) const {
  std::vector<Complex> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, std::span<const Complex> v) {
  if (v.size() != rows_) throw DimensionError("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(Matrix a, Complex s) { return a *= s; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("shape mismatch in *");
  Matrix c(a.rows(), b.cols());
  kernels::gemm(a.rows(), b.cols(), a.cols(), a.data().data(), b.data().data(), c.data().data());
  return c;
}

Matrix adjoint_family(const Matrix& a, AdjointKind which) {
  switch (which) {
    case AdjointKind::conjugate: {
      Matrix c = a;
      for (auto& x : c.data()) x = std::conj(x);
      return c;
    }
    case AdjointKind::transpose:
    case AdjointKind::conjugate_transpose: {
      Matrix t(a.cols(), a.rows());
      bool cj = which == AdjointKind::conjugate_transpose;
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = cj ? std::conj(a(i, j)) : a(i, j);
      return t;
    }
  }
  return a;
}

Matrix transpose(const Matrix& a) { return adjoint_family(a, AdjointKind::transpose); }
Matrix conj(const Matrix& a) { return adjoint_family(a, AdjointKind::conjugate); }
Matrix adjoint(const Matrix& a) { return adjoint_family(a, AdjointKind::conjugate_transpose); }

double frobenius_norm(const Matrix& a) {
  // scaled accumulation, avoids overflow on huge entries
  double scale = 0.0, ssq = 1.0;
  for (const auto& z : a.data()) {
    for (double v : {z.real(), z.imag()}) {
      double av = std::abs(v);
      if (av == 0.0) continue;
      if (scale < av) {
        ssq = 1.0 + ssq * (scale / av) * (scale / av);
        scale = av;
      } else {
        ssq += (av / scale) * (av / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

double spectral_norm(const Matrix& a) {
  if (a.empty()) return 0.0;
  return singular_values(a).front();
}

double norm(const Matrix& a, NormKind kind) {
  return kind == NormKind::frobenius ? frobenius_norm(a) : spectral_norm(a);
}

Complex trace(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("trace of non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Matrix direct_sum(std::span<const Matrix> blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix m(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

double relative_residual(const Matrix& lhs, const Matrix& rhs) {
  double d = frobenius_norm(lhs - rhs);
  return d / std::max(1.0, frobenius_norm(lhs) + frobenius_norm(rhs));
}

bool approx_equal(const Matrix& x, const Matrix& y, double rtol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  return frobenius_norm(x - y) <= rtol * std::max(1.0, frobenius_norm(x));
}

double unitarity_defect(const Matrix& m) {
  return frobenius_norm(adjoint(m) * m - Matrix::identity(m.cols()));
}

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

LuDecomposition::LuDecomposition(const Matrix& a) : lu_(a), perm_(a.rows()) {
  if (!a.is_square()) throw DimensionError("LU of non-square matrix");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  double amax = 0.0;
  for (const auto& z : a.data()) amax = std::max(amax, std::abs(z));
  const double floor = amax * 1e-15 * static_cast<double>(std::max<std::size_t>(n, 1));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    if (best == 0.0 || best <= floor) throw PreconditionError("matrix is singular", best);
    if (p != k) {
      std::swap(perm_[p], perm_[k]);
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(k, j));
    }
    const Complex piv = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex f = lu_(i, k) / piv;
      lu_(i, k) = f;
      if (f == Complex(0.0))
        continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

std::vector<Complex> LuDecomposition::solve(std::span<const Complex> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw DimensionError("rhs length mismatch");
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

Matrix LuDecomposition::solve(const Matrix& b) const {
  if (b.rows() != lu_.rows()) throw DimensionError("rhs rows mismatch");
  Matrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) x.set_column(j, solve(b.column_values(j)));
  return x;
}

Matrix solve(const Matrix& a, const Matrix& b) { return LuDecomposition(a).solve(b); }

Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

}  // namespace canonica
