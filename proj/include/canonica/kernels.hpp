#pragma once

#include <cstddef>

#include "canonica/matrix.hpp"

// Hot loops. `serial` is the reference; `parallel` splits the same
// element-wise work across OpenMP threads and must agree bitwise.
namespace canonica::kernels {

/// 2x2 rotation applied to a pair of length-n vectors:
///   x' = j00*x + j10*y,  y' = j01*x + j11*y
struct Rotation {
  Complex j00, j01, j10, j11;
};

namespace serial {
void gemm(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
          Complex* c);
void rotate_pair(std::size_t n, Complex* x, Complex* y, const Rotation& r);
}  // namespace serial

namespace parallel {
void gemm(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
          Complex* c);
void rotate_pair(std::size_t n, Complex* x, Complex* y, const Rotation& r);
}  // namespace parallel

/// Work (m*n*k) above which gemm dispatches to the parallel kernel.
inline constexpr std::size_t kParallelGemmWork = 64 * 64 * 64;
/// Vector length above which rotate_pair dispatches to the parallel kernel.
inline constexpr std::size_t kParallelRotateLength = 4096;

/// C (m x n) = A (m x k) * B (k x n), all row-major, C overwritten.
void gemm(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
          Complex* c);
void rotate_pair(std::size_t n, Complex* x, Complex* y, const Rotation& r);

/// sum conj(x_i) y_i, fixed left-to-right order.
Complex dot(std::size_t n, const Complex* x, const Complex* y);
/// sum |x_i|^2
double squared_norm(std::size_t n, const Complex* x);

}  // namespace canonica::kernels
