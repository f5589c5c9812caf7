#include "rootrefine/numctx.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>

#include "rootrefine/errors.hpp"

namespace rootrefine {

namespace {
constexpr mpfr_rnd_t kRound = MPFR_RNDN;
constexpr Bits kDefaultPrecision = 53;

Bits max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

// ---------------------------------------------------------------------------
// Real

Real::Real() {
  mpfr_init2(v_, kDefaultPrecision);
  mpfr_set_zero(v_, 1);
}

Real::Real(double value, Bits precision) {
  mpfr_init2(v_, precision);
  mpfr_set_d(v_, value, kRound);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, kRound);
}

Real::Real(Real&& other) noexcept {
  v_[0] = other.v_[0];
  other.v_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (v_->_mpfr_d == nullptr) {
      mpfr_init2(v_, other.precision());
    } else if (precision() != other.precision()) {
      mpfr_set_prec(v_, other.precision());
    }
    mpfr_set(v_, other.v_, kRound);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) {
    std::swap(v_[0], other.v_[0]);
  }
  return *this;
}

Real::~Real() {
  if (v_->_mpfr_d != nullptr) {
    mpfr_clear(v_);
  }
}

Real Real::zero(Bits precision) {
  Real r(0.0, precision);
  return r;
}

Real Real::pow2(long exponent, Bits precision) {
  Real r(1.0, precision);
  mpfr_mul_2si(r.v_, r.v_, exponent, kRound);
  return r;
}

Real Real::parse(std::string_view text, Bits precision) {
  std::string buf(text);
  // trim
  const auto first = buf.find_first_not_of(" \t\r\n");
  const auto last = buf.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) {
    throw ContractViolation("empty numeric string");
  }
  buf = buf.substr(first, last - first + 1);
  Real r = zero(precision);
  if (mpfr_set_str(r.v_, buf.c_str(), 0, kRound) != 0 || !mpfr_number_p(r.v_)) {
    throw ContractViolation("malformed number '" + buf + "'");
  }
  return r;
}

void Real::set_precision(Bits precision) { mpfr_prec_round(v_, precision, kRound); }

Real Real::at_precision(Bits precision) const {
  Real r = zero(precision);
  mpfr_set(r.v_, v_, kRound);
  return r;
}

double Real::log2_abs() const {
  if (is_zero()) {
    return -HUGE_VAL;
  }
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, v_, kRound);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string Real::to_decimal(int digits) const {
  if (digits < 1) {
    digits = 1;
  }
  if (is_zero()) {
    return "0";
  }
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), v_, kRound);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string out;
  std::size_t pos = 0;
  if (mant[0] == '-') {
    out.push_back('-');
    pos = 1;
  }
  out.push_back(mant[pos]);
  if (mant.size() > pos + 1) {
    out.push_back('.');
    out.append(mant, pos + 1, std::string::npos);
  }
  out.push_back('e');
  out += std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

Real& Real::operator+=(const Real& rhs) {
  mpfr_add(v_, v_, rhs.v_, kRound);
  return *this;
}
Real& Real::operator-=(const Real& rhs) {
  mpfr_sub(v_, v_, rhs.v_, kRound);
  return *this;
}
Real& Real::operator*=(const Real& rhs) {
  mpfr_mul(v_, v_, rhs.v_, kRound);
  return *this;
}
Real& Real::operator/=(const Real& rhs) {
  mpfr_div(v_, v_, rhs.v_, kRound);
  return *this;
}
Real& Real::operator*=(long rhs) {
  mpfr_mul_si(v_, v_, rhs, kRound);
  return *this;
}
Real& Real::operator/=(long rhs) {
  mpfr_div_si(v_, v_, rhs, kRound);
  return *this;
}
Real& Real::scale2(long exponent) {
  mpfr_mul_2si(v_, v_, exponent, kRound);
  return *this;
}

Real operator-(const Real& x) {
  Real r = Real::zero(x.precision());
  mpfr_neg(r.v_, x.v_, kRound);
  return r;
}
Real operator+(const Real& a, const Real& b) {
  Real r = Real::zero(max_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, kRound);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r = Real::zero(max_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, kRound);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r = Real::zero(max_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, kRound);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r = Real::zero(max_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, kRound);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, double b) {
  if (mpfr_nan_p(a.v_) || std::isnan(b)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp_d(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real abs(const Real& x) {
  Real r = Real::zero(x.precision());
  mpfr_abs(r.raw(), x.raw(), kRound);
  return r;
}

Real sqrt(const Real& x) {
  Real r = Real::zero(x.precision());
  mpfr_sqrt(r.raw(), x.raw(), kRound);
  return r;
}

Real hypot(const Real& a, const Real& b) {
  Real r = Real::zero(max_prec(a, b));
  mpfr_hypot(r.raw(), a.raw(), b.raw(), kRound);
  return r;
}

Real pi(Bits precision) {
  Real r = Real::zero(precision);
  mpfr_const_pi(r.raw(), kRound);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  return os << x.to_decimal(static_cast<int>(std::min<Bits>(x.precision() * 0.30103 + 1, 40)));
}

// ---------------------------------------------------------------------------
// Complex

Complex::Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}

Complex::Complex(double re, double im, Bits precision) : re_(re, precision), im_(im, precision) {}

Complex Complex::zero(Bits precision) { return {0.0, 0.0, precision}; }
Complex Complex::one(Bits precision) { return {1.0, 0.0, precision}; }

Bits Complex::precision() const { return std::max(re_.precision(), im_.precision()); }

void Complex::set_precision(Bits precision) {
  re_.set_precision(precision);
  im_.set_precision(precision);
}

Complex Complex::at_precision(Bits precision) const {
  return {re_.at_precision(precision), im_.at_precision(precision)};
}

Complex& Complex::operator+=(const Complex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  const Bits p = re_.precision();
  Real ac = Real::zero(p);
  Real bd = Real::zero(p);
  Real ad = Real::zero(p);
  mpfr_mul(ac.raw(), re_.raw(), rhs.re_.raw(), kRound);
  mpfr_mul(bd.raw(), im_.raw(), rhs.im_.raw(), kRound);
  mpfr_mul(ad.raw(), re_.raw(), rhs.im_.raw(), kRound);
  // im = bc + ad, re = ac - bd
  mpfr_mul(im_.raw(), im_.raw(), rhs.re_.raw(), kRound);
  mpfr_add(im_.raw(), im_.raw(), ad.raw(), kRound);
  mpfr_sub(re_.raw(), ac.raw(), bd.raw(), kRound);
  return *this;
}

Complex& Complex::operator/=(const Complex& rhs) {
  const Bits p = std::max(precision(), rhs.precision());
  Real den = norm(rhs);
  den.set_precision(p);
  Real re = re_ * rhs.re_ + im_ * rhs.im_;
  Real im = im_ * rhs.re_ - re_ * rhs.im_;
  re /= den;
  im /= den;
  re.set_precision(re_.precision());
  im.set_precision(im_.precision());
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

Complex& Complex::operator/=(const Real& rhs) {
  re_ /= rhs;
  im_ /= rhs;
  return *this;
}

Complex& Complex::operator*=(long rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

Complex& Complex::operator/=(long rhs) {
  re_ /= rhs;
  im_ /= rhs;
  return *this;
}

Complex& Complex::scale2(long exponent) {
  re_.scale2(exponent);
  im_.scale2(exponent);
  return *this;
}

Complex operator-(const Complex& x) { return {-x.re_, -x.im_}; }

Complex operator+(const Complex& a, const Complex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }

Complex operator-(const Complex& a, const Complex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }

Complex operator*(const Complex& a, const Complex& b) {
  Complex r = a.precision() >= b.precision() ? a : a.at_precision(b.precision());
  r *= b;
  return r;
}

Complex operator/(const Complex& a, const Complex& b) {
  Complex r = a.precision() >= b.precision() ? a : a.at_precision(b.precision());
  r /= b;
  return r;
}

Complex operator*(const Complex& a, const Real& b) { return {a.re_ * b, a.im_ * b}; }
Complex operator*(const Real& a, const Complex& b) { return {a * b.re_, a * b.im_}; }
Complex operator/(const Complex& a, const Real& b) { return {a.re_ / b, a.im_ / b}; }

Complex conj(const Complex& z) { return {z.real(), -z.imag()}; }

Real norm(const Complex& z) {
  Real r = z.real() * z.real();
  Real i2 = z.imag() * z.imag();
  r += i2;
  return r;
}

Real abs(const Complex& z) { return hypot(z.real(), z.imag()); }

double log2_abs(const Complex& z) {
  const double a = z.real().log2_abs();
  const double b = z.imag().log2_abs();
  const double hi = std::max(a, b);
  if (std::isinf(hi)) {
    return hi;
  }
  const double lo = std::min(a, b);
  return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << '(' << z.real() << ", " << z.imag() << ')';
}

// ---------------------------------------------------------------------------
// PrecisionContext

PrecisionContext::PrecisionContext(Bits lambda, Bits ell, Bits tau)
    : lambda_(lambda), ell_(ell), tau_(tau) {
  if (lambda < 2 || ell < 1 || tau < 0 || lambda < ell) {
    throw ContractViolation("precision context requires lambda >= ell >= 1 and tau >= 0");
  }
}

PrecisionContext PrecisionContext::for_target(Bits ell, Bits tau, long degree) {
  if (degree < 1) {
    throw ContractViolation("precision schedule needs degree >= 1");
  }
  if (degree == 1) {
    return {ell + tau + 8, ell, tau};
  }
  return {working_precision_for(ell, tau, degree), ell, tau};
}

PrecisionContext PrecisionContext::with_lambda(Bits lambda) { return {lambda, lambda, 0}; }

PrecisionContext PrecisionContext::rescaled(Bits lambda) const {
  return {lambda, std::min(ell_, lambda), tau_};
}

Bits working_precision_for(Bits ell, Bits tau, long degree) {
  if (ell < 1 || tau < 0) {
    throw ContractViolation("working_precision_for requires ell >= 1 and tau >= 0");
  }
  if (degree < 2) {
    throw ContractViolation("working_precision_for requires degree >= 2 (lg lg d undefined)");
  }
  const long double lgd = std::log2(static_cast<long double>(degree));
  const long double value = static_cast<long double>(ell) +
                            static_cast<long double>(tau) * (3.0L + lgd) + 1.5L * lgd * lgd +
                            6.5L * lgd + 4.0L * std::log2(lgd) + 18.0L;
  // Exact integers (powers-of-two degrees) must not round up through noise.
  return static_cast<Bits>(std::ceil(value - 1e-9L));
}

Complex root_of_unity(long q, long j, const PrecisionContext& ctx) {
  if (q < 1 || j < 0 || j >= q) {
    throw ContractViolation("root_of_unity requires q >= 1 and 0 <= j < q");
  }
  const Bits p = ctx.lambda();
  if (j == 0) {
    return Complex::one(p);
  }
  if (2 * j == q) {
    return {-1.0, 0.0, p};
  }
  if (4 * j == q) {
    return {0.0, 1.0, p};
  }
  if (4 * j == 3 * q) {
    return {0.0, -1.0, p};
  }
  if ((8 * j) % q == 0) {
    // odd multiples of π/4
    Real h = sqrt(Real(2.0, p));
    h.scale2(-1);
    const long octant = 8 * j / q;
    const double sr = (octant == 1 || octant == 7) ? 1.0 : -1.0;
    const double si = (octant == 1 || octant == 3) ? 1.0 : -1.0;
    Real re = h;
    Real im = h;
    if (sr < 0) re = -re;
    if (si < 0) im = -im;
    return {re, im};
  }
  const Bits guard = p + 32;
  Real angle = pi(guard);
  angle *= 2 * j;
  angle /= q;
  Real s = Real::zero(p);
  Real c = Real::zero(p);
  mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), kRound);
  return {c, s};
}

}  // namespace rootrefine
