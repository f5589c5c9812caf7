#include "rootrefine/powersum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rootrefine/dft.hpp"
#include "rootrefine/errors.hpp"

namespace rootrefine {

namespace {

constexpr Bits kRadiusPrecision = 64;
constexpr std::size_t kMaxQ = std::size_t{1} << 24;
// Covers the double evaluation of the series bound, which can be tight.
constexpr double kBoundSlackLog2 = 1e-9;

Real radius_of(double x) { return Real(x, kRadiusPrecision); }

Real unit_roundoff(Bits lambda) { return Real::pow2(1 - lambda, kRadiusPrecision); }

Real abs_low(const Complex& z) { return abs(z.at_precision(kRadiusPrecision)); }

// 2^x without leaving the double range for very negative x.
Real exp2_radius(double x) {
  const double whole = std::floor(x);
  Real r(std::exp2(x - whole), kRadiusPrecision);
  r.scale2(static_cast<long>(whole));
  return r;
}

double lg_of_size(std::size_t q) { return std::log2(static_cast<double>(q)); }

// Σ_i |c_i| and Σ_i i|c_i| at low precision.
Real coefficient_mass(const Coeffs& c, bool weighted) {
  Real sum = Real::zero(kRadiusPrecision);
  for (std::size_t i = 0; i < c.size(); ++i) {
    Real a = abs_low(c[i]);
    if (weighted) {
      a *= static_cast<long>(i);
    }
    sum += a;
  }
  return sum;
}

Real max_magnitude(const Coeffs& c) {
  Real m = Real::zero(kRadiusPrecision);
  for (const auto& x : c) {
    Real a = abs_low(x);
    if (a > m) m = a;
  }
  return m;
}

// Samples of g and g' at the q-th roots of unity, via fold and two DFTs.
ContourSamples samples_on_unit_circle(const Polynomial& g, std::size_t q,
                                      const PrecisionContext& ctx) {
  const auto plan = DftPlan::get(q, ctx);
  ContourSamples s;
  s.values = eval_at_roots(fold(g, q), *plan);
  const double growth = static_cast<double>(g.degree()) + 10.0 * (lg_of_size(q) + 1.0);
  const Real u = unit_roundoff(ctx.lambda());
  s.value_error = u * radius_of(2.0 * growth) * coefficient_mass(g.coeffs(), false);
  if (g.degree() == 0) {
    s.derivatives.assign(q, Complex::zero(ctx.lambda()));
    s.derivative_error = Real::zero(kRadiusPrecision);
  } else {
    s.derivatives = eval_at_roots(fold(derivative(g), q), *plan);
    s.derivative_error = u * radius_of(2.0 * growth) * coefficient_mass(g.coeffs(), true);
  }
  s.guard_scale = max_magnitude(g.coeffs());
  return s;
}

// Samples of p(X + ρω^j) and ρ·p'(X + ρω^j) by Horner at the mapped points.
ContourSamples samples_by_direct_evaluation(const Polynomial& p, const Complex& center,
                                            const Real& rho, std::size_t q,
                                            const PrecisionContext& ctx) {
  const auto plan = DftPlan::get(q, ctx);
  const Bits prec = ctx.lambda();
  const Polynomial pl = p.at_precision(prec);
  const Complex x0 = center.at_precision(prec);
  const Real r = rho.at_precision(prec);
  ContourSamples s;
  s.values.reserve(q);
  s.derivatives.reserve(q);
  for (std::size_t j = 0; j < q; ++j) {
    Complex x = plan->root(j) * r;
    x += x0;
    auto vd = eval_with_derivative(pl, x);
    vd.derivative *= r;
    s.values.push_back(std::move(vd.value));
    s.derivatives.push_back(std::move(vd.derivative));
  }
  // Horner bound u(2d+8)Σ|p_i|R^i, plus the effect of rounding the points.
  const Real reach = abs_low(center) + rho.at_precision(kRadiusPrecision);
  Real mass = Real::zero(kRadiusPrecision);
  Real dmass = Real::zero(kRadiusPrecision);
  Real ddmass = Real::zero(kRadiusPrecision);
  Real power = Real(1.0, kRadiusPrecision);
  Real prev_power = Real::zero(kRadiusPrecision);
  Real prev_prev = Real::zero(kRadiusPrecision);
  for (std::size_t i = 0; i <= p.degree(); ++i) {
    const Real a = abs_low(p[i]);
    mass += a * power;
    Real t = a * prev_power;
    t *= static_cast<long>(i);
    dmass += t;
    Real tt = a * prev_prev;
    tt *= static_cast<long>(i * (i > 0 ? i - 1 : 0));
    ddmass += tt;
    prev_prev = prev_power;
    prev_power = power;
    power *= reach;
  }
  const Real u = unit_roundoff(prec);
  const Real growth = radius_of(2.0 * static_cast<double>(p.degree()) + 8.0);
  s.value_error = u * growth * (mass + reach * dmass);
  s.derivative_error = u * growth * (dmass + reach * ddmass) * rho.at_precision(kRadiusPrecision);
  s.guard_scale = mass;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

double IsolatedDisc::eta() const { return std::sqrt(isolation) - 1.0; }

double IsolatedDisc::separation() const { return 1.0 / std::sqrt(isolation); }

Real IsolatedDisc::contour_radius() const {
  Real rho = radius;
  rho *= Real(std::sqrt(isolation), radius.precision());
  return rho;
}

void IsolatedDisc::validate() const {
  if (!(isolation > 1.0) || !std::isfinite(isolation)) {
    throw ContractViolation("disc isolation ratio must be finite and > 1");
  }
  if (radius.sign() <= 0) {
    throw ContractViolation("disc radius must be positive");
  }
}

double series_bound_log2(double z, std::size_t k, std::size_t degree, std::size_t q) {
  const double lz = std::log2(z);
  const double qd = static_cast<double>(q);
  const double kd = static_cast<double>(k);
  const double t1 = (qd + kd) * lz;
  double num = t1;
  if (degree > 1) {
    const double t2 = std::log2(static_cast<double>(degree - 1)) + (qd - kd) * lz;
    const double hi = std::max(t1, t2);
    num = hi + std::log2(std::exp2(t1 - hi) + std::exp2(t2 - hi));
  }
  const double den = std::log1p(-std::exp2(qd * lz)) / std::log(2.0);
  return num - den;
}

double series_bound(double z, std::size_t k, std::size_t degree, std::size_t q) {
  return std::exp2(series_bound_log2(z, k, degree, q));
}

std::size_t select_q_log2(double z, std::size_t k, std::size_t degree, double log2_delta) {
  if (!(z > 0.0) || !(z < 1.0)) {
    throw ContractViolation("select_q requires 0 < z < 1 (disc not isolated)");
  }
  if (std::isnan(log2_delta)) {
    throw ContractViolation("select_q requires delta > 0");
  }
  std::size_t q = 1;
  while (q <= k) {
    q <<= 1;
  }
  while (series_bound_log2(z, k, degree, q) > log2_delta) {
    q <<= 1;
    if (q > kMaxQ) {
      throw InsufficientPrecision("no q up to 2^24 reaches the requested power-sum accuracy");
    }
  }
  return q;
}

std::size_t select_q(double z, std::size_t k, std::size_t degree, double delta) {
  if (!(delta > 0.0)) {
    throw ContractViolation("select_q requires delta > 0");
  }
  return select_q_log2(z, k, degree, std::log2(delta));
}

QuotientVector quotient_vector(const ContourSamples& samples, const PrecisionContext& ctx) {
  const std::size_t q = samples.values.size();
  if (q == 0 || samples.derivatives.size() != q) {
    throw ContractViolation("contour samples are empty or mismatched");
  }
  const Bits prec = ctx.lambda();
  Real guard = samples.guard_scale;
  guard.scale2(-prec / 2);
  const Real u = unit_roundoff(prec);

  QuotientVector out;
  out.v.reserve(q);
  Real perturbation = Real::zero(kRadiusPrecision);
  Real mass = Real::zero(kRadiusPrecision);
  for (std::size_t j = 0; j < q; ++j) {
    const Real pv = abs_low(samples.values[j]);
    if (pv < guard || pv <= samples.value_error * radius_of(2.0)) {
      throw ContourProximityError("contour point " + std::to_string(j) +
                                  " is too close to a root; re-certify the isolation of the disc");
    }
    Complex v = samples.derivatives[j].at_precision(prec);
    v /= samples.values[j];
    const Real av = abs_low(v);
    Real dv = (samples.derivative_error + av * samples.value_error) / (pv - samples.value_error);
    dv += av * u * radius_of(4.0);
    perturbation += dv;
    mass += av;
    out.v.push_back(std::move(v));
  }
  const Real transform = u * radius_of(10.0 * (lg_of_size(q) + 1.0)) * mass;
  out.rounding_radius = (perturbation + transform) / radius_of(static_cast<double>(q));
  out.rounding_radius *= radius_of(1.0 + 1.0 / 64);
  return out;
}

std::vector<PowerSumEstimate> estimates_from_quotients(const QuotientVector& qv, std::size_t kmax,
                                                       double z, std::size_t degree,
                                                       const PrecisionContext& ctx,
                                                       const Complex* shift) {
  const std::size_t q = qv.v.size();
  if (q < 2 || !is_power_of_two(q)) {
    throw ContractViolation("q must be a power of two >= 2");
  }
  if (kmax + 2 > q) {
    throw ContractViolation("power index kmax must satisfy kmax <= q - 2");
  }
  const auto plan = DftPlan::get(q, ctx);
  Coeffs w = dft_forward(*plan, qv.v);
  const auto qlong = static_cast<long>(q);

  Complex offset;
  bool has_offset = false;
  if (shift != nullptr) {
    offset = shift->at_precision(ctx.lambda()) * w[0];
    offset /= qlong;
    has_offset = true;
  }

  std::vector<PowerSumEstimate> out;
  out.reserve(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) {
    PowerSumEstimate e;
    e.k = k;
    e.q_used = q;
    e.value = w[(k + 1) % q];
    e.value /= qlong;
    e.error_radius = exp2_radius(series_bound_log2(z, k, degree, q) + kBoundSlackLog2);
    e.error_radius += qv.rounding_radius;
    if (has_offset) {
      e.value += offset;
      e.error_radius += abs_low(*shift) * qv.rounding_radius;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<PowerSumEstimate> power_sums_unit_disc(const Polynomial& p, std::size_t q,
                                                   std::size_t kmax, double z,
                                                   const PrecisionContext& ctx) {
  if (q < 2 || !is_power_of_two(q)) {
    throw ContractViolation("q must be a power of two >= 2");
  }
  if (kmax + 2 > q) {
    throw ContractViolation("power index kmax must satisfy kmax <= q - 2");
  }
  if (!(z > 0.0) || !(z < 1.0)) {
    throw ContractViolation("separation z must lie in (0, 1)");
  }
  const Polynomial g = p.at_precision(ctx.lambda());
  const QuotientVector qv = quotient_vector(samples_on_unit_circle(g, q, ctx), ctx);
  return estimates_from_quotients(qv, kmax, z, g.degree(), ctx);
}

namespace {

std::size_t q_for_disc(const IsolatedDisc& disc, std::size_t kmax, std::size_t degree,
                       double log2_delta) {
  const double z = disc.separation();
  const double lg_scale = std::log2(std::sqrt(disc.isolation));
  std::size_t q = next_power_of_two(kmax + 2);
  for (std::size_t k = 0; k <= kmax; ++k) {
    // truncation gets half of delta, measured in the disc frame
    const double target = log2_delta - 1.0 - static_cast<double>(k) * lg_scale;
    q = std::max(q, select_q_log2(z, k, degree, target));
  }
  return q;
}

ContourSamples samples_for_disc(const Polynomial& p, const IsolatedDisc& disc, std::size_t q,
                                const PrecisionContext& ctx, ContourPath path) {
  const Real rho = disc.contour_radius().at_precision(ctx.lambda());
  if (path == ContourPath::TaylorShift) {
    const Polynomial g =
        taylor_shift_scale(p.at_precision(ctx.lambda()), disc.center.at_precision(ctx.lambda()), rho);
    return samples_on_unit_circle(g, q, ctx);
  }
  return samples_by_direct_evaluation(p, disc.center, rho, q, ctx);
}

}  // namespace

std::vector<PowerSumEstimate> power_sums_in_disc_log2(const Polynomial& p, const IsolatedDisc& disc,
                                                      std::size_t kmax, double log2_delta,
                                                      const PrecisionContext& ctx, ContourPath path) {
  disc.validate();
  if (std::isnan(log2_delta) || log2_delta == HUGE_VAL) {
    throw ContractViolation("power_sums_in_disc requires a finite delta > 0");
  }
  const std::size_t q = q_for_disc(disc, kmax, p.degree(), log2_delta);
  const QuotientVector qv = quotient_vector(samples_for_disc(p, disc, q, ctx, path), ctx);
  auto est = estimates_from_quotients(qv, kmax, disc.separation(), p.degree(), ctx);
  // contour frame -> disc frame
  const Real scale(std::sqrt(disc.isolation), ctx.lambda());
  Real factor(1.0, ctx.lambda());
  for (auto& e : est) {
    e.value *= factor;
    e.error_radius *= factor.at_precision(kRadiusPrecision);
    factor *= scale;
  }
  return est;
}

std::vector<PowerSumEstimate> power_sums_in_disc(const Polynomial& p, const IsolatedDisc& disc,
                                                 std::size_t kmax, double delta,
                                                 const PrecisionContext& ctx, ContourPath path) {
  if (!(delta > 0.0)) {
    throw ContractViolation("power_sums_in_disc requires delta > 0");
  }
  return power_sums_in_disc_log2(p, disc, kmax, std::log2(delta), ctx, path);
}

PowerSumEstimate shifted_power_sums(const Polynomial& p, const IsolatedDisc& disc,
                                    const Complex& c, std::size_t q, const PrecisionContext& ctx,
                                    std::size_t k, ContourPath path) {
  disc.validate();
  const QuotientVector qv = quotient_vector(samples_for_disc(p, disc, q, ctx, path), ctx);
  auto est = estimates_from_quotients(qv, k, disc.separation(), p.degree(), ctx, &c);
  return std::move(est[k]);
}

}  // namespace rootrefine
