#include "canonica/iteration.hpp"

#include <algorithm>
#include <cmath>

#include "canonica/error.hpp"
#include "canonica/factorizations.hpp"
#include "canonica/kernels.hpp"
#include "canonica/predicates.hpp"

namespace canonica {

const char* to_string(Boundedness b) {
  switch (b) {
    case Boundedness::bounded: return "bounded";
    case Boundedness::unbounded: return "unbounded";
    case Boundedness::unsupported: return "unsupported";
  }
  return "unsupported";
}

const char* to_string(Growth g) {
  switch (g) {
    case Growth::bounded: return "bounded";
    case Growth::unbounded: return "unbounded";
    case Growth::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

BoundednessReport classify_bounded(const Matrix& a, IterationMode mode, const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("matrix must be square");
  if (!is_nonsingular(a, tol)) throw PreconditionError("iteration needs a nonsingular matrix");
  const bool tr = mode == IterationMode::transpose;
  const Matrix cs = solve(tr ? transpose(a) : adjoint(a), a);
  BoundednessReport rep;
  rep.fast_path = tr ? is_congruence_normal(a, tol) : is_squared_normal(a, tol);

  std::vector<Complex> lam;
  if (rep.fast_path)
    lam = eig_normal(cs, tol, 1e-6).lambda;
  else
    lam = eigvals_general(cs);
  rep.max_modulus = 0.0;
  rep.min_modulus = lam.empty() ? 0.0 : std::abs(lam.front());
  for (auto z : lam) {
    rep.max_modulus = std::max(rep.max_modulus, std::abs(z));
    rep.min_modulus = std::min(rep.min_modulus, std::abs(z));
  }
  const double slack = tol.cluster_rtol * std::max(1.0, rep.max_modulus);
  if (rep.max_modulus > 1.0 + slack || (!lam.empty() && rep.min_modulus < 1.0 - slack))
    rep.verdict = Boundedness::unbounded;
  else
    rep.verdict = rep.fast_path ? Boundedness::bounded : Boundedness::unsupported;
  return rep;
}

IterationTrace simulate(const Matrix& a, std::span<const Complex> x0, std::size_t steps,
                        IterationMode mode, const ToleranceConfig& tol) {
  if (!a.is_square()) throw DimensionError("matrix must be square");
  if (x0.size() != a.rows()) throw DimensionError("x0 length does not match the matrix");
  if (steps == 0) throw PreconditionError("steps must be positive");
  if (!is_nonsingular(a, tol)) throw PreconditionError("iteration needs a nonsingular matrix");
  const std::size_t n = a.rows();
  const LuDecomposition lu(mode == IterationMode::transpose ? transpose(a) : adjoint(a));

  IterationTrace t;
  std::vector<Complex> x(x0.begin(), x0.end());
  std::vector<Complex> ax(n);
  const double n0 = std::sqrt(kernels::squared_norm(n, x.data()));
  t.norms.push_back(n0);
  for (std::size_t k = 0; k < steps; ++k) {
    kernels::gemm(n, 1, n, a.data().data(), x.data(), ax.data());
    x = lu.solve(ax);
    for (auto& v : x) v = -v;
    const double nk = std::sqrt(kernels::squared_norm(n, x.data()));
    if (!std::isfinite(nk)) break;
    t.norms.push_back(nk);
    if (nk > 1e250) break;
  }
  const double peak = *std::max_element(t.norms.begin(), t.norms.end());
  if (peak <= kBoundedFactor * n0)
    t.growth = Growth::bounded;
  else if (t.norms.back() >= kUnboundedFactor * n0)
    t.growth = Growth::unbounded;
  else
    t.growth = Growth::inconclusive;
  return t;
}

}  // namespace canonica
