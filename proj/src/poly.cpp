#include "rootrefine/poly.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rootrefine/errors.hpp"

namespace rootrefine {

namespace {

Bits common_precision(const Coeffs& coeffs) {
  Bits p = 2;
  for (const auto& c : coeffs) {
    p = std::max(p, c.precision());
  }
  return p;
}

// ⌈lg x⌉ for a positive magnitude estimate, computed from the rounded-up
// absolute value so that exact powers of two land on their exponent.
Bits ceil_log2(const Complex& z) {
  Real a = abs(z.at_precision(64));
  a.set_precision(64);
  Real up = Real::zero(64);
  mpfr_abs(up.raw(), a.raw(), MPFR_RNDU);
  long e = mpfr_get_exp(up.raw());
  // up ∈ [2^(e-1), 2^e)
  Real low = Real::pow2(e - 1, 64);
  return up == low ? e - 1 : e;
}

}  // namespace

Polynomial::Polynomial(Coeffs coeffs) : Polynomial(coeffs, common_precision(coeffs)) {}

Polynomial::Polynomial(Coeffs coeffs, Bits precision)
    : coeffs_(std::move(coeffs)), precision_(precision), tau_(0) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) {
    coeffs_.pop_back();
  }
  if (coeffs_.empty()) {
    throw ContractViolation("the zero polynomial has no degree");
  }
  bool any = false;
  Bits tau = 0;
  for (auto& c : coeffs_) {
    if (c.precision() != precision_) {
      c.set_precision(precision_);
    }
    if (!c.is_zero()) {
      const Bits t = ceil_log2(c);
      tau = any ? std::max(tau, t) : t;
      any = true;
    }
  }
  tau_ = std::max<Bits>(0, tau);
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, Bits precision) {
  Coeffs c{Complex::one(precision)};
  c.reserve(roots.size() + 1);
  for (const auto& root : roots) {
    const Complex r = root.at_precision(precision);
    c.push_back(Complex::zero(precision));
    for (std::size_t i = c.size() - 1; i > 0; --i) {
      c[i] = c[i - 1] - r * c[i];
    }
    c[0] = -(r * c[0]);
  }
  return Polynomial(std::move(c), precision);
}

Polynomial Polynomial::at_precision(Bits precision) const {
  Coeffs c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) {
    c.push_back(x.at_precision(precision));
  }
  return Polynomial(std::move(c), precision);
}

double Polynomial::log2_max_coeff() const {
  double m = -HUGE_VAL;
  for (const auto& c : coeffs_) {
    m = std::max(m, log2_abs(c));
  }
  return m;
}

Complex eval(std::span<const Complex> coeffs, const Complex& x) {
  if (coeffs.empty()) {
    return Complex::zero(x.precision());
  }
  const Bits p = std::max(coeffs.back().precision(), x.precision());
  Complex acc = coeffs.back().at_precision(p);
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    acc *= x;
    acc += coeffs[i];
  }
  return acc;
}

Complex eval(const Polynomial& p, const Complex& x) { return eval(p.coeffs(), x); }

ValueAndDerivative eval_with_derivative(const Polynomial& p, const Complex& x) {
  const Bits prec = std::max(p.precision(), x.precision());
  const auto& c = p.coeffs();
  Complex value = c.back().at_precision(prec);
  Complex deriv = Complex::zero(prec);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    deriv *= x;
    deriv += value;
    value *= x;
    value += c[i];
  }
  return {std::move(value), std::move(deriv)};
}

Polynomial derivative(const Polynomial& p) {
  if (p.degree() == 0) {
    throw ContractViolation("derivative of a constant polynomial");
  }
  Coeffs d;
  d.reserve(p.degree());
  for (std::size_t i = 1; i <= p.degree(); ++i) {
    Complex c = p[i];
    c *= static_cast<long>(i);
    d.push_back(std::move(c));
  }
  return Polynomial(std::move(d), p.precision());
}

Polynomial derivative(const Polynomial& p, std::size_t order) {
  if (order > p.degree()) {
    throw ContractViolation("derivative order exceeds degree");
  }
  Polynomial out = p;
  for (std::size_t k = 0; k < order; ++k) {
    out = derivative(out);
  }
  return out;
}

Reversed reverse(const Polynomial& p) {
  Coeffs c(p.coeffs().rbegin(), p.coeffs().rend());
  std::size_t drop = 0;
  while (drop + 1 < c.size() && c[c.size() - 1 - drop].is_zero()) {
    ++drop;
  }
  return {Polynomial(std::move(c), p.precision()), drop};
}

Polynomial taylor_shift_scale(const Polynomial& p, const Complex& center, const Real& radius) {
  if (radius.sign() <= 0) {
    throw ContractViolation("taylor_shift_scale requires r > 0");
  }
  const Bits prec = std::max({p.precision(), center.precision(), radius.precision()});
  Coeffs a;
  a.reserve(p.degree() + 1);
  for (const auto& c : p.coeffs()) {
    a.push_back(c.at_precision(prec));
  }
  const Complex x = center.at_precision(prec);
  const std::size_t d = p.degree();
  if (!x.is_zero()) {
    const auto n = static_cast<std::ptrdiff_t>(d);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      for (std::ptrdiff_t j = n - 1; j >= i; --j) {
        a[j] += x * a[j + 1];
      }
    }
  }
  Real scale = radius.at_precision(prec);
  Real power = Real(1.0, prec);
  for (std::size_t i = 1; i <= d; ++i) {
    power *= scale;
    a[i] *= power;
  }
  return Polynomial(std::move(a), prec);
}

Bits shifted_tau_bound(const Polynomial& p, const Complex& center, const Real& radius) {
  const double reach = std::max(2.0, abs(center).to_double() + radius.to_double());
  return p.tau() + static_cast<Bits>(p.degree()) * static_cast<Bits>(std::ceil(std::log2(reach)));
}

FoldedPolynomial fold(const Polynomial& p, std::size_t q) {
  if (q == 0) {
    throw ContractViolation("fold requires q >= 1");
  }
  FoldedPolynomial out;
  out.q = q;
  out.coeffs.reserve(q);
  const std::size_t n = p.degree() + 1;
  for (std::size_t i = 0; i < q; ++i) {
    if (i < n) {
      out.coeffs.push_back(p[i]);
    } else {
      out.coeffs.push_back(Complex::zero(p.precision()));
    }
  }
  for (std::size_t i = q; i < n; ++i) {
    out.coeffs[i % q] += p[i];
  }
  return out;
}

}  // namespace rootrefine
