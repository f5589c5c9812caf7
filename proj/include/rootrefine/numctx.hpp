#pragma once

// Precision-controlled real and complex arithmetic.
//
// Every value carries its own mantissa length in bits. Binary operators return
// a value at the larger of the two operand precisions; compound assignment
// keeps the precision of the left operand. All rounding is round-to-nearest.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rootrefine {

using Bits = long;

class Real {
 public:
  Real();
  Real(double value, Bits precision);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real zero(Bits precision);
  /// 2^exponent, exact.
  static Real pow2(long exponent, Bits precision);
  /// Parses decimal ("1.25e-3") or hexadecimal-float ("0x1.4p-10") text.
  /// Throws ContractViolation on malformed input.
  static Real parse(std::string_view text, Bits precision);

  Bits precision() const { return mpfr_get_prec(v_); }
  /// Rounds in place to a new precision.
  void set_precision(Bits precision);
  Real at_precision(Bits precision) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Approximate base-2 logarithm of |x|; -infinity for zero. Works far
  /// outside the double exponent range.
  double log2_abs() const;
  /// Scientific decimal representation with `digits` significant digits.
  std::string to_decimal(int digits) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);
  /// Multiplies by 2^exponent (exact).
  Real& scale2(long exponent);

  friend Real operator-(const Real& x);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, double b);

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real hypot(const Real& a, const Real& b);
Real pi(Bits precision);
std::ostream& operator<<(std::ostream& os, const Real& x);

class Complex {
 public:
  Complex() = default;
  Complex(Real re, Real im);
  Complex(double re, double im, Bits precision);

  static Complex zero(Bits precision);
  static Complex one(Bits precision);

  const Real& real() const { return re_; }
  const Real& imag() const { return im_; }
  Real& real() { return re_; }
  Real& imag() { return im_; }

  Bits precision() const;
  void set_precision(Bits precision);
  Complex at_precision(Bits precision) const;
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator/=(const Complex& rhs);
  Complex& operator*=(const Real& rhs);
  Complex& operator/=(const Real& rhs);
  Complex& operator*=(long rhs);
  Complex& operator/=(long rhs);
  Complex& scale2(long exponent);

  friend Complex operator-(const Complex& x);
  friend Complex operator+(const Complex& a, const Complex& b);
  friend Complex operator-(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Real& b);
  friend Complex operator*(const Real& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Real& b);

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Real re_;
  Real im_;
};

Complex conj(const Complex& z);
/// |z|^2.
Real norm(const Complex& z);
Real abs(const Complex& z);
/// Fast magnitude estimate: lg|z| to within a fraction of a bit.
double log2_abs(const Complex& z);
std::ostream& operator<<(std::ostream& os, const Complex& z);

/// Working precision λ together with the target output precision ℓ and the
/// coefficient-magnitude bound τ it was derived from. Immutable.
class PrecisionContext {
 public:
  /// λ = working_precision_for(ell, tau, d); for d = 1 uses ℓ + τ + 8.
  static PrecisionContext for_target(Bits ell, Bits tau, long degree);
  /// Explicit working precision; ℓ is taken equal to λ.
  static PrecisionContext with_lambda(Bits lambda);
  PrecisionContext(Bits lambda, Bits ell, Bits tau);

  Bits lambda() const { return lambda_; }
  Bits ell() const { return ell_; }
  Bits tau() const { return tau_; }

  Real real(double value) const { return Real(value, lambda_); }
  Complex complex(double re, double im = 0.0) const { return Complex(re, im, lambda_); }
  Real parse(std::string_view text) const { return Real::parse(text, lambda_); }
  /// Same context at a different working precision (ℓ, τ kept, ℓ clamped to λ).
  PrecisionContext rescaled(Bits lambda) const;

 private:
  Bits lambda_;
  Bits ell_;
  Bits tau_;
};

/// ⌈ℓ + τ·lg(8d) + (3/2)lg²d + (13/2)lg d + 4·lg lg d + 18⌉.
/// Requires ell >= 1, tau >= 0, d >= 2.
Bits working_precision_for(Bits ell, Bits tau, long degree);

/// exp(2πi·j/q) at the context's working precision. Exact for j = 0 and
/// for the axis points j ∈ {q/4, q/2, 3q/4} when q is divisible accordingly.
Complex root_of_unity(long q, long j, const PrecisionContext& ctx);

}  // namespace rootrefine
