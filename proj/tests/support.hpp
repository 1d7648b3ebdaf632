#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

#include "canonica/generators.hpp"
#include "canonica/matrix.hpp"

namespace support {

using canonica::Complex;
using canonica::Matrix;
using EMat = Eigen::MatrixXcd;

inline EMat to_eigen(const Matrix& a) {
  EMat e(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
  return e;
}

inline Matrix from_eigen(const EMat& e) {
  Matrix a(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return a;
}

// ||x - y||_F / max(1, ||x||_F)
inline double rel_err(const Matrix& x, const Matrix& y) {
  return canonica::frobenius_norm(x - y) / std::max(1.0, canonica::frobenius_norm(x));
}

inline std::vector<double> oracle_singular_values(const Matrix& a) {
  Eigen::JacobiSVD<EMat> s(to_eigen(a));
  const auto& v = s.singularValues();
  return std::vector<double>(v.data(), v.data() + v.size());
}

// eigenvalues sorted by (re, im)
inline std::vector<Complex> oracle_eigenvalues(const Matrix& a) {
  Eigen::ComplexEigenSolver<EMat> es(to_eigen(a), false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

// greedy multiset distance
inline double multiset_distance(std::vector<Complex> x, std::vector<Complex> y) {
  if (x.size() != y.size()) return 1e300;
  double worst = 0.0;
  for (Complex v : x) {
    auto it = std::min_element(y.begin(), y.end(),
                               [&](Complex p, Complex q) { return std::abs(p - v) < std::abs(q - v); });
    worst = std::max(worst, std::abs(*it - v));
    y.erase(it);
  }
  return worst;
}

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) return 1e300;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

}  // namespace support
