#include "rootrefine/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "rootrefine/errors.hpp"

namespace rootrefine {

namespace {

constexpr Bits kLow = 64;
constexpr Bits kSearchPrecision = 128;
constexpr std::size_t kSearchSweeps = 1000;
constexpr int kSearchRetries = 3;
constexpr int kFastToleranceBits = 40;
constexpr std::size_t kPolishSweeps = 60;

Real low_abs(const Complex& z) { return abs(z.at_precision(kLow)); }

Real max_one(const Real& x) { return x > 1.0 ? x : Real(1.0, kLow); }

// Scratch space for the sweeps, so that the O(d²) inner loops do not allocate.
class Workspace {
 public:
  explicit Workspace(Bits prec)
      : vr_(0.0, prec), vi_(0.0, prec), sr_(0.0, prec), si_(0.0, prec), a_(0.0, prec), b_(0.0, prec),
        n_(0.0, prec), qr_(0.0, prec), qi_(0.0, prec) {}

  /// p(x) into (vr, vi) and p'(x) into (sr, si).
  void horner(const Coeffs& c, const Complex& x) {
    mpfr_srcptr xr = x.real().raw();
    mpfr_srcptr xi = x.imag().raw();
    mpfr_set(vr_.raw(), c.back().real().raw(), kRnd);
    mpfr_set(vi_.raw(), c.back().imag().raw(), kRnd);
    mpfr_set_zero(sr_.raw(), 1);
    mpfr_set_zero(si_.raw(), 1);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      mul_add(sr_, si_, xr, xi, vr_.raw(), vi_.raw());
      mul_add(vr_, vi_, xr, xi, c[i].real().raw(), c[i].imag().raw());
    }
  }

  /// Σ_{j≠k} 1/(z_k - z_j) into (qr, qi).
  void reciprocal_sum(const std::vector<Complex>& z, std::size_t k) {
    mpfr_set_zero(qr_.raw(), 1);
    mpfr_set_zero(qi_.raw(), 1);
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == k) continue;
      mpfr_sub(a_.raw(), z[k].real().raw(), z[j].real().raw(), kRnd);
      mpfr_sub(b_.raw(), z[k].imag().raw(), z[j].imag().raw(), kRnd);
      mpfr_sqr(n_.raw(), a_.raw(), kRnd);
      mpfr_fma(n_.raw(), b_.raw(), b_.raw(), n_.raw(), kRnd);
      if (mpfr_zero_p(n_.raw())) continue;
      mpfr_div(a_.raw(), a_.raw(), n_.raw(), kRnd);
      mpfr_div(b_.raw(), b_.raw(), n_.raw(), kRnd);
      mpfr_add(qr_.raw(), qr_.raw(), a_.raw(), kRnd);
      mpfr_sub(qi_.raw(), qi_.raw(), b_.raw(), kRnd);
    }
  }

  Complex value() const { return Complex(vr_, vi_); }
  Complex slope() const { return Complex(sr_, si_); }
  Complex sum() const { return Complex(qr_, qi_); }
  bool value_is_zero() const { return vr_.is_zero() && vi_.is_zero(); }
  bool slope_is_zero() const { return sr_.is_zero() && si_.is_zero(); }

 private:
  static constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

  // (ur, ui) <- (ur, ui)·(xr, xi) + (cr, ci)
  void mul_add(Real& ur, Real& ui, mpfr_srcptr xr, mpfr_srcptr xi, mpfr_srcptr cr, mpfr_srcptr ci) {
    mpfr_mul(a_.raw(), ur.raw(), xr, kRnd);
    mpfr_mul(b_.raw(), ui.raw(), xi, kRnd);
    mpfr_sub(a_.raw(), a_.raw(), b_.raw(), kRnd);
    mpfr_mul(b_.raw(), ur.raw(), xi, kRnd);
    mpfr_fma(ui.raw(), ui.raw(), xr, b_.raw(), kRnd);
    mpfr_add(ui.raw(), ui.raw(), ci, kRnd);
    mpfr_add(ur.raw(), a_.raw(), cr, kRnd);
  }

  Real vr_, vi_, sr_, si_, a_, b_, n_, qr_, qi_;
};

// Gauss–Seidel Aberth sweeps until every correction is below
// 2^{-tol_bits}·max(1, |z|). Returns false when the budget runs out.
bool aberth(const Coeffs& c, std::vector<Complex>& z, Bits tol_bits, std::size_t max_sweeps) {
  const std::size_t d = z.size();
  const Bits prec = c.front().precision();
  Workspace ws(prec);
  std::vector<bool> done(d, false);
  std::size_t remaining = d;
  for (std::size_t sweep = 0; sweep < max_sweeps && remaining > 0; ++sweep) {
    for (std::size_t k = 0; k < d; ++k) {
      if (done[k]) continue;
      ws.horner(c, z[k]);
      if (ws.value_is_zero()) {
        done[k] = true;
        --remaining;
        continue;
      }
      if (ws.slope_is_zero()) {
        Real nudge = max_one(low_abs(z[k])).at_precision(prec);
        nudge.scale2(-20);
        z[k] += Complex(nudge, nudge);
        continue;
      }
      Complex ratio = ws.value();
      ratio /= ws.slope();
      ws.reciprocal_sum(z, k);
      Complex denom = Complex::one(prec);
      denom -= ratio * ws.sum();
      Complex w = ratio;
      if (!denom.is_zero()) {
        w /= denom;
      }
      z[k] -= w;
      Real limit = max_one(low_abs(z[k]));
      limit.scale2(-tol_bits);
      if (low_abs(w) <= limit) {
        done[k] = true;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

// Aberth sweeps in long double, used to bring the starting circle close to
// the roots cheaply. Gives up (false) on non-finite values or budget exhaustion.
bool aberth_fast(const std::vector<std::complex<long double>>& c, std::vector<std::complex<long double>>& z,
                 std::size_t max_sweeps) {
  using C = std::complex<long double>;
  const std::size_t d = z.size();
  const long double tol = std::ldexp(1.0L, -kFastToleranceBits);
  std::vector<bool> done(d, false);
  std::size_t remaining = d;
  for (std::size_t sweep = 0; sweep < max_sweeps && remaining > 0; ++sweep) {
    for (std::size_t k = 0; k < d; ++k) {
      if (done[k]) continue;
      C v = c.back();
      C s = 0;
      for (std::size_t i = c.size() - 1; i-- > 0;) {
        s = s * z[k] + v;
        v = v * z[k] + c[i];
      }
      if (v == C(0)) {
        done[k] = true;
        --remaining;
        continue;
      }
      if (s == C(0)) return false;
      const C ratio = v / s;
      C sum = 0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != k && z[k] != z[j]) sum += C(1) / (z[k] - z[j]);
      }
      const C denom = C(1) - ratio * sum;
      const C w = denom == C(0) ? ratio : ratio / denom;
      z[k] -= w;
      if (!std::isfinite(z[k].real()) || !std::isfinite(z[k].imag())) return false;
      if (std::abs(w) <= tol * std::max(1.0L, std::abs(z[k]))) {
        done[k] = true;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

Complex residual(const Coeffs& c, const Complex& x) {
  Workspace ws(c.front().precision());
  ws.horner(c, x);
  return ws.value();
}

}  // namespace

Real cauchy_radius(const Polynomial& p) {
  const std::size_t d = p.degree();
  std::vector<Real> a;
  a.reserve(d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    a.push_back(-low_abs(p[i]));
  }
  a.push_back(low_abs(p.leading()));
  auto f = [&](const Real& x) {
    Real acc = a.back();
    for (std::size_t i = d; i-- > 0;) {
      acc *= x;
      acc += a[i];
    }
    return acc;
  };
  bool any = false;
  for (std::size_t i = 0; i < d; ++i) {
    any = any || !a[i].is_zero();
  }
  if (!any) {
    return Real::zero(kLow);
  }
  Real lo = Real::zero(kLow);
  Real hi = Real(1.0, kLow);
  while (f(hi).sign() <= 0) {
    lo = hi;
    hi.scale2(1);
  }
  while (f(lo).sign() > 0) {
    hi = lo;
    lo.scale2(-1);
  }
  for (int it = 0; it < 70; ++it) {
    Real mid = lo + hi;
    mid.scale2(-1);
    if (f(mid).sign() > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<Complex> oracle_roots(const Polynomial& p, Bits precision) {
  if (precision < 16) {
    throw ContractViolation("oracle precision must be at least 16 bits");
  }
  const std::size_t d = p.degree();
  if (d == 0) {
    return {};
  }
  Real radius = cauchy_radius(p);
  if (radius.is_zero()) {
    radius = Real(1.0, kLow);
  }

  const Bits search = std::min<Bits>(kSearchPrecision, precision + 16);
  Coeffs c;
  for (const auto& x : p.coeffs()) {
    c.push_back(x.at_precision(search));
  }
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<std::complex<long double>> fz;
  for (std::size_t k = 0; k < d; ++k) {
    const double theta = two_pi * static_cast<double>(k) / static_cast<double>(d) + 0.4;
    const double wobble = 1.0 + 0.02 * std::sin(1.7 * static_cast<double>(k));
    fz.push_back(std::polar<long double>(radius.to_double() * wobble, theta));
  }
  std::vector<std::complex<long double>> fc;
  bool representable = true;
  for (const auto& x : p.coeffs()) {
    const long double re = mpfr_get_ld(x.real().raw(), MPFR_RNDN);
    const long double im = mpfr_get_ld(x.imag().raw(), MPFR_RNDN);
    representable = representable && std::isfinite(re) && std::isfinite(im);
    fc.emplace_back(re, im);
  }
  const std::vector<std::complex<long double>> circle = fz;
  if (!representable || !aberth_fast(fc, fz, kSearchSweeps)) {
    fz = circle;
  }
  std::vector<Complex> z;
  z.reserve(d);
  for (const auto& w : fz) {
    Complex zk = Complex::zero(search);
    mpfr_set_ld(zk.real().raw(), w.real(), MPFR_RNDN);
    mpfr_set_ld(zk.imag().raw(), w.imag(), MPFR_RNDN);
    z.push_back(std::move(zk));
  }
  // Search to half the search precision; a stall usually means the rounding
  // floor of an ill-conditioned root, so retry from the current iterates wider.
  Bits width = search;
  for (int attempt = 0;; ++attempt) {
    if (aberth(c, z, width / 2, kSearchSweeps)) {
      break;
    }
    if (attempt == kSearchRetries) {
      throw DivergenceError("oracle Aberth iteration did not converge");
    }
    width *= 2;
    c.clear();
    for (const auto& x : p.coeffs()) {
      c.push_back(x.at_precision(width));
    }
    for (auto& x : z) {
      x.set_precision(width);
    }
  }

  // headroom for conditioning: corrections must fall below 2^{-precision}
  const Bits polish = 2 * precision + 16;
  c.clear();
  for (const auto& x : p.coeffs()) {
    c.push_back(x.at_precision(polish));
  }
  for (auto& x : z) {
    x.set_precision(polish);
  }
  if (!aberth(c, z, precision, kPolishSweeps)) {
    throw DivergenceError("oracle polishing did not converge");
  }

  Real norm = Real::zero(kLow);
  for (const auto& x : c) {
    const Real a = low_abs(x);
    if (a > norm) norm = a;
  }
  for (std::size_t i = 0; i < d; ++i) {
    const Real mag = max_one(low_abs(z[i]));
    Real bound = norm * Real(static_cast<double>(d + 1), kLow);
    for (std::size_t k = 0; k < d; ++k) {
      bound *= mag;
    }
    bound.scale2(-precision / 2);
    if (low_abs(residual(c, z[i])) > bound) {
      throw DivergenceError("oracle root " + std::to_string(i) + " fails the residual check");
    }
    Real sep = mag;
    sep.scale2(-precision / 4);
    for (std::size_t j = i + 1; j < d; ++j) {
      if (low_abs(z[i] - z[j]) <= sep) {
        throw ContractViolation("oracle found a multiple root near index " + std::to_string(i));
      }
    }
  }
  for (auto& x : z) {
    x.set_precision(precision);
  }
  return z;
}

std::vector<IsolatedDisc> discs_around(std::span<const Complex> roots, double isolation,
                                       Bits precision) {
  if (!(isolation > 1.0)) {
    throw ContractViolation("isolation target must exceed 1");
  }
  const double golden = 2.399963229728653;
  std::vector<IsolatedDisc> out;
  out.reserve(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Real r(1.0, kLow);
    double iso = 1e6;
    if (roots.size() > 1) {
      Real nearest;
      bool first = true;
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j == i) continue;
        Real dist = low_abs(roots[i] - roots[j]);
        if (first || dist < nearest) {
          nearest = dist;
          first = false;
        }
      }
      Real floor = max_one(low_abs(roots[i]));
      floor.scale2(-precision / 4);
      if (nearest <= floor) {
        throw ContractViolation("roots near index " + std::to_string(i) +
                                " are too clustered for the requested isolation");
      }
      r = nearest / Real(isolation + 0.5, kLow);
      iso = isolation;
    }
    const double angle = golden * static_cast<double>(i + 1);
    Real off = r;
    off.scale2(-3);
    const Bits prec = std::max(roots[i].precision(), precision);
    Complex center = roots[i].at_precision(prec);
    center += Complex(off * Real(std::cos(angle), kLow), off * Real(std::sin(angle), kLow));
    IsolatedDisc disc;
    disc.center = std::move(center);
    disc.radius = r;
    disc.isolation = iso;
    disc.claimed_root_count = 1;
    out.push_back(std::move(disc));
  }
  return out;
}

std::vector<IsolatedDisc> oracle_discs(const Polynomial& p, double isolation, Bits precision) {
  const auto roots = oracle_roots(p, precision);
  return discs_around(roots, isolation, precision);
}

}  // namespace rootrefine
