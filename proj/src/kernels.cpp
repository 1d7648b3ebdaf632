#include "canonica/kernels.hpp"

#include <cstdint>

namespace canonica::kernels {

namespace {

// one row of C, inner loop over k in fixed order so both kernels round identically
inline void gemm_row(std::size_t i, std::size_t n, std::size_t k, const Complex* a,
                     const Complex* b, Complex* c) {
  Complex* ci = c + i * n;
  for (std::size_t j = 0; j < n; ++j) ci[j] = 0.0;
  for (std::size_t p = 0; p < k; ++p) {
    const Complex aip = a[i * k + p];
    if (aip == Complex(0.0)) continue;
    const Complex* bp = b + p * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
  }
}

inline void rotate_one(Complex& x, Complex& y, const Rotation& r) {
  const Complex xv = x, yv = y;
  x = r.j00 * xv + r.j10 * yv;
  y = r.j01 * xv + r.j11 * yv;
}

}  // namespace

namespace serial {

void gemm(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
          Complex* c) {
  for (std::size_t i = 0; i < m; ++i) gemm_row(i, n, k, a, b, c);
}

void rotate_pair(std::size_t n, Complex* x, Complex* y, const Rotation& r) {
  for (std::size_t i = 0; i < n; ++i) rotate_one(x[i], y[i], r);
}

}  // namespace serial

namespace parallel {

void gemm(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
          Complex* c) {
  const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) gemm_row(static_cast<std::size_t>(i), n, k, a, b, c);
}

void rotate_pair(std::size_t n, Complex* x, Complex* y, const Rotation& r) {
  const auto len = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < len; ++i) rotate_one(x[i], y[i], r);
}

}  // namespace parallel

void gemm(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
          Complex* c) {
  if (m * n * k >= kParallelGemmWork)
    parallel::gemm(m, n, k, a, b, c);
  else
    serial::gemm(m, n, k, a, b, c);
}

void rotate_pair(std::size_t n, Complex* x, Complex* y, const Rotation& r) {
  if (n >= kParallelRotateLength)
    parallel::rotate_pair(n, x, y, r);
  else
    serial::rotate_pair(n, x, y, r);
}

Complex dot(std::size_t n, const Complex* x, const Complex* y) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double squared_norm(std::size_t n, const Complex* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
  return s;
}

}  // namespace canonica::kernels
