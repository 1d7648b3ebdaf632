#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace canonica {

using Complex = std::complex<double>;

/// Relative thresholds shared by every decision the library makes.
///
/// rank_rtol    singular values at or below rank_rtol * sigma_max * max(rows, cols)
///              are treated as zero.
/// residual_rtol bound on relative Frobenius residuals of identity checks.
/// cluster_rtol eigenvalue / singular value clustering radius, relative to the
///              largest modulus in the set being clustered.
struct ToleranceConfig {
  double rank_rtol = 1e-10;
  double residual_rtol = 1e-9;
  double cluster_rtol = 1e-8;

  /// Throws PreconditionError unless every field lies in (0, 1).
  void validate() const;
};

/// Dense complex matrix, row-major, value semantics.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Complex> d);
  static Matrix diagonal(std::span<const double> d);
  static Matrix column_vector(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }
  std::vector<Complex> column_values(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Complex> v);

  /// Rows / columns picked by index, in the given order.
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Complex s);

  /// Exact entrywise equality. Only meaningful for values that were never
  /// rounded (structural tests); computed results use approx_equal.
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Matrix a, Complex s);
Matrix operator*(Complex s, Matrix a);

enum class AdjointKind { transpose, conjugate, conjugate_transpose };

Matrix adjoint_family(const Matrix& a, AdjointKind which);
Matrix transpose(const Matrix& a);
Matrix conj(const Matrix& a);
Matrix adjoint(const Matrix& a);

enum class NormKind { frobenius, spectral };

double frobenius_norm(const Matrix& a);
/// Largest singular value (computed with the Jacobi SVD).
double spectral_norm(const Matrix& a);
double norm(const Matrix& a, NormKind kind);

Complex trace(const Matrix& a);

Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix direct_sum(std::span<const Matrix> blocks);

/// ||L - R||_F / max(1, ||L||_F + ||R||_F).
double relative_residual(const Matrix& lhs, const Matrix& rhs);

/// ||X - Y||_F <= rtol * max(1, ||X||_F).
bool approx_equal(const Matrix& x, const Matrix& y, double rtol);

/// ||M^* M - I||_F.
double unitarity_defect(const Matrix& m);

/// Commutator XY - YX.
Matrix commutator(const Matrix& x, const Matrix& y);

/// LU with partial pivoting. Throws PreconditionError on an exactly or
/// numerically singular pivot (relative to the largest entry).
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& a);
  Matrix solve(const Matrix& b) const;
  std::vector<Complex> solve(std::span<const Complex> b) const;
  std::size_t order() const noexcept { return lu_.rows(); }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

Matrix solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);

}  // namespace canonica
