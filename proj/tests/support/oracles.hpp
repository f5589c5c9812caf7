#pragma once

// Reference computations for the test suites. Each one is the plain
// textbook formula, written without the library's transforms or recurrences.

#include <mpfr.h>

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "rootrefine/numctx.hpp"
#include "rootrefine/poly.hpp"

namespace rootrefine::testing {

/// Σ c_i x^i with explicit powers.
inline Complex naive_eval(const Coeffs& c, const Complex& x) {
  const Bits prec = std::max(x.precision(), c.empty() ? 2 : c.front().precision());
  Complex sum = Complex::zero(prec);
  Complex power = Complex::one(prec);
  for (const auto& ci : c) {
    sum += ci * power;
    power *= x;
  }
  return sum;
}

inline Complex naive_eval(const Polynomial& p, const Complex& x) { return naive_eval(p.coeffs(), x); }

/// lg Σ|c_i||x|^i, the natural scale of an evaluation error.
inline double lg_mass(const Coeffs& c, const Complex& x) {
  const Real ax = abs(x.at_precision(64));
  Real acc = Real::zero(64);
  for (std::size_t i = c.size(); i-- > 0;) {
    acc *= ax;
    acc += abs(c[i].at_precision(64));
  }
  return acc.log2_abs();
}

/// exp(2πi·t) with t = num/den, from MPFR sin/cos.
inline Complex unit_phase(long num, long den, Bits prec) {
  Real angle = pi(prec + 16);
  angle *= 2 * (num % den);
  angle /= den;
  Real s = Real::zero(prec);
  Real c = Real::zero(prec);
  mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
  return Complex(c, s);
}

/// out[h] = Σ_i ω^{hi} v[i], O(q²).
inline Coeffs naive_dft(const Coeffs& v, Bits prec) {
  const auto q = static_cast<long>(v.size());
  Coeffs out;
  for (long h = 0; h < q; ++h) {
    Complex sum = Complex::zero(prec);
    for (long i = 0; i < q; ++i) {
      sum += unit_phase((h * i) % q, q, prec) * v[static_cast<std::size_t>(i)];
    }
    out.push_back(std::move(sum));
  }
  return out;
}

inline Coeffs naive_product(const Coeffs& a, const Coeffs& b, Bits prec) {
  Coeffs c(a.size() + b.size() - 1, Complex::zero(prec));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

/// Π (x - z) by repeated naive products.
inline Coeffs naive_from_roots(const std::vector<Complex>& roots, Bits prec) {
  Coeffs c{Complex::one(prec)};
  for (const auto& z : roots) {
    c = naive_product(c, Coeffs{-z.at_precision(prec), Complex::one(prec)}, prec);
  }
  return c;
}

/// Σ z^k over the given roots.
inline Complex power_sum(const std::vector<Complex>& roots, std::size_t k, Bits prec) {
  Complex sum = Complex::zero(prec);
  for (const auto& z : roots) {
    Complex t = Complex::one(prec);
    for (std::size_t i = 0; i < k; ++i) {
      t *= z;
    }
    sum += t;
  }
  return sum;
}

/// lg|a - b|, -inf when equal.
inline double lg_dist(const Complex& a, const Complex& b) {
  const Bits prec = std::max(a.precision(), b.precision());
  return log2_abs(a.at_precision(prec) - b.at_precision(prec));
}

inline double max_lg_dist(const Coeffs& a, const Coeffs& b) {
  double worst = -HUGE_VAL;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const Bits prec = 64;
    const Complex x = i < a.size() ? a[i] : Complex::zero(prec);
    const Complex y = i < b.size() ? b[i] : Complex::zero(prec);
    worst = std::max(worst, lg_dist(x, y));
  }
  return worst;
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  /// Gaussian real and imaginary parts, exact doubles.
  Complex gaussian(Bits prec) {
    std::normal_distribution<double> g;
    return Complex(g(rng_), g(rng_), prec);
  }

  Coeffs gaussian_coeffs(std::size_t n, Bits prec) {
    Coeffs c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(gaussian(prec));
    return c;
  }

  /// Uniform in the disc of the given radius.
  Complex in_disc(double radius, Bits prec) {
    const double rho = radius * std::sqrt(uniform(0.0, 1.0));
    const double t = uniform(0.0, 2.0 * M_PI);
    return Complex(rho * std::cos(t), rho * std::sin(t), prec);
  }

  /// Modulus in [lo, hi], uniform angle.
  Complex in_annulus(double lo, double hi, Bits prec) {
    const double rho = uniform(lo, hi);
    const double t = uniform(0.0, 2.0 * M_PI);
    return Complex(rho * std::cos(t), rho * std::sin(t), prec);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace rootrefine::testing
