#pragma once

#include <span>
#include <string>
#include <vector>

#include "canonica/matrix.hpp"

namespace canonica {

/// A^T x_{k+1} + A x_k = 0 or A^* x_{k+1} + A x_k = 0
enum class IterationMode { transpose, star };

enum class Boundedness { bounded, unbounded, unsupported };
enum class Growth { bounded, unbounded, inconclusive };

const char* to_string(Boundedness b);
const char* to_string(Growth g);

struct BoundednessReport {
  Boundedness verdict = Boundedness::unsupported;
  bool fast_path = false;          // class membership made the cosquare normal
  double max_modulus = 0.0;        // largest |eigenvalue| of the cosquare
  double min_modulus = 0.0;
};

BoundednessReport classify_bounded(const Matrix& a, IterationMode mode, const ToleranceConfig& tol);

inline constexpr double kBoundedFactor = 1e3;
inline constexpr double kUnboundedFactor = 1e6;

struct IterationTrace {
  std::vector<double> norms;  // ||x_k||_2, k = 0..K (may stop early on overflow)
  Growth growth = Growth::inconclusive;
};

IterationTrace simulate(const Matrix& a, std::span<const Complex> x0, std::size_t steps,
                        IterationMode mode, const ToleranceConfig& tol = {});

}  // namespace canonica
