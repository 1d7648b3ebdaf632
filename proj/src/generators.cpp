#include "canonica/generators.hpp"

#include <cmath>
#include <numbers>

#include "canonica/kernels.hpp"

namespace canonica::gen {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

Complex unit_complex(Rng& rng) { return std::polar(1.0, uniform(rng, -std::numbers::pi, std::numbers::pi)); }

Matrix gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (auto& z : m.data()) z = gaussian_complex(rng);
  return m;
}

Matrix random_unitary(std::size_t n, Rng& rng) {
  // Gram-Schmidt on Gaussian columns, twice for orthogonality
  Matrix g = gaussian(n, n, rng);
  Matrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> v = g.column_values(j);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < j; ++i) {
        Complex d = 0.0;
        for (std::size_t r = 0; r < n; ++r) d += std::conj(q(r, i)) * v[r];
        for (std::size_t r = 0; r < n; ++r) v[r] -= d * q(r, i);
      }
    const double nv = std::sqrt(kernels::squared_norm(n, v.data()));
    for (std::size_t r = 0; r < n; ++r) q(r, j) = v[r] / nv;
  }
  return q;
}

Matrix random_hermitian(std::size_t n, Rng& rng) {
  const Matrix g = gaussian(n, n, rng);
  return (g + adjoint(g)) * Complex(0.5);
}

Matrix random_nonsingular(std::size_t n, Rng& rng, double cond) {
  const double h = 0.5 * std::log(cond);
  std::vector<double> s(n);
  for (auto& x : s) x = std::exp(uniform(rng, -h, h));
  return random_unitary(n, rng) * Matrix::diagonal(std::span<const double>(s)) * adjoint(random_unitary(n, rng));
}

Matrix random_normal(std::size_t n, Rng& rng) {
  std::vector<Complex> d(n);
  for (auto& z : d) z = gaussian_complex(rng);
  const Matrix u = random_unitary(n, rng);
  return u * Matrix::diagonal(std::span<const Complex>(d)) * adjoint(u);
}

Matrix random_conjugate_normal(std::size_t n, Rng& rng, bool allow_singular) {
  return congruence_normal_from(random_conjugate_normal_form(n, rng, {allow_singular, true}),
                                random_unitary(n, rng));
}

Matrix random_involution(std::size_t n, Rng& rng) {
  std::vector<Complex> d(n);
  for (auto& z : d) z = uniform(rng, 0.0, 1.0) < 0.5 ? 1.0 : -1.0;
  const Matrix s = random_nonsingular(n, rng, 4.0);
  return s * Matrix::diagonal(std::span<const Complex>(d)) * inverse(s);
}

Matrix random_coninvolutory(std::size_t n, Rng& rng) {
  std::vector<Matrix> blocks;
  std::size_t at = 0;
  while (at < n) {
    if (n - at >= 2 && uniform(rng, 0.0, 1.0) < 0.5) {
      const double s = uniform(rng, 1.2, 3.0);
      blocks.push_back(Matrix{{0.0, s}, {1.0 / s, 0.0}});
      at += 2;
    } else {
      blocks.push_back(Matrix{{1.0}});
      ++at;
    }
  }
  const Matrix u = random_unitary(n, rng);
  return u * direct_sum(blocks) * transpose(u);
}

Matrix random_lambda_projection(std::size_t n, Complex lambda, std::size_t rank, Rng& rng) {
  std::vector<Complex> d(n, 0.0);
  for (std::size_t i = 0; i < rank && i < n; ++i) d[i] = lambda;
  const Matrix s = random_nonsingular(n, rng, 4.0);
  return s * Matrix::diagonal(std::span<const Complex>(d)) * inverse(s);
}

Matrix random_quadratic(std::size_t n, Complex l1, Complex l2, std::size_t k, Rng& rng) {
  std::vector<Complex> d(n, l2);
  for (std::size_t i = 0; i < k && i < n; ++i) d[i] = l1;
  const Matrix s = random_nonsingular(n, rng, 4.0);
  return s * Matrix::diagonal(std::span<const Complex>(d)) * inverse(s);
}

namespace {

double pick_tau(Rng& rng) { return uniform(rng, 0.5, 3.0); }

Complex pick_inner_mu(Rng& rng) { return std::polar(uniform(rng, 0.1, 0.9), uniform(rng, -3.0, 3.0)); }

}  // namespace

CongruenceCanonicalForm random_congruence_form(std::size_t n, Rng& rng, FormOptions opt) {
  CongruenceCanonicalForm f;
  std::size_t left = n;
  while (left > 0) {
    const bool repeat = opt.allow_repeats && uniform(rng, 0.0, 1.0) < 0.2;
    const double u = uniform(rng, 0.0, 1.0);
    if (left >= 2 && u < 0.6) {
      CongruencePair p;
      if (repeat && !f.two_by_two.empty()) {
        p = f.two_by_two.back();
      } else {
        p.tau = pick_tau(rng);
        const double k = uniform(rng, 0.0, 1.0);
        if (k < 0.4)
          p.mu = pick_inner_mu(rng);
        else if (k < 0.7)
          p.mu = std::polar(1.0, uniform(rng, 0.2, std::numbers::pi - 0.2));
        else if (k < 0.85 || !opt.allow_singular)
          p.mu = -1.0;
        else
          p.mu = 0.0;
      }
      f.two_by_two.push_back(p);
      left -= 2;
    } else {
      double s;
      if (repeat && !f.one_by_one.empty())
        s = f.one_by_one.back();
      else
        s = opt.allow_singular && uniform(rng, 0.0, 1.0) < 0.15 ? 0.0 : pick_tau(rng);
      f.one_by_one.push_back(s);
      --left;
    }
  }
  sort_congruence_form(f);
  return f;
}

CongruenceCanonicalForm random_conjugate_normal_form(std::size_t n, Rng& rng, FormOptions opt) {
  CongruenceCanonicalForm f;
  std::size_t left = n;
  while (left > 0) {
    if (left >= 2 && uniform(rng, 0.0, 1.0) < 0.5) {
      const double k = uniform(rng, 0.0, 1.0);
      const Complex mu = k < 0.7 ? std::polar(1.0, uniform(rng, 0.2, std::numbers::pi - 0.2)) : Complex(-1.0);
      f.two_by_two.push_back({pick_tau(rng), mu});
      left -= 2;
    } else {
      f.one_by_one.push_back(opt.allow_singular && uniform(rng, 0.0, 1.0) < 0.15 ? 0.0 : pick_tau(rng));
      --left;
    }
  }
  sort_congruence_form(f);
  return f;
}

StarCanonicalForm random_star_form(std::size_t n, Rng& rng, FormOptions opt) {
  StarCanonicalForm f;
  std::size_t left = n;
  while (left > 0) {
    const bool repeat = opt.allow_repeats && uniform(rng, 0.0, 1.0) < 0.2;
    if (left >= 2 && uniform(rng, 0.0, 1.0) < 0.5) {
      StarPair p;
      if (repeat && !f.two_by_two.empty()) {
        p = f.two_by_two.back();
      } else {
        p.tau = pick_tau(rng);
        p.mu = opt.allow_singular && uniform(rng, 0.0, 1.0) < 0.2 ? Complex(0.0) : pick_inner_mu(rng);
      }
      f.two_by_two.push_back(p);
      left -= 2;
    } else {
      Complex l;
      if (repeat && !f.one_by_one.empty())
        l = f.one_by_one.back();
      else if (opt.allow_singular && uniform(rng, 0.0, 1.0) < 0.15)
        l = 0.0;
      else
        l = std::polar(pick_tau(rng), uniform(rng, -3.0, 3.0));
      f.one_by_one.push_back(l);
      --left;
    }
  }
  sort_star_form(f);
  return f;
}

Matrix congruence_normal_from(const CongruenceCanonicalForm& f, const Matrix& u) {
  return u * assemble_congruence(f) * transpose(u);
}

Matrix squared_normal_from(const StarCanonicalForm& f, const Matrix& u) {
  return u * assemble_star(f) * adjoint(u);
}

Matrix random_congruence_normal(std::size_t n, Rng& rng, FormOptions opt) {
  const auto f = random_congruence_form(n, rng, opt);
  return congruence_normal_from(f, random_unitary(n, rng));
}

Matrix random_squared_normal(std::size_t n, Rng& rng, FormOptions opt) {
  const auto f = random_star_form(n, rng, opt);
  return squared_normal_from(f, random_unitary(n, rng));
}

}  // namespace canonica::gen
