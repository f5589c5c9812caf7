#include "rootrefine/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "rootrefine/dft.hpp"
#include "rootrefine/errors.hpp"
#include "rootrefine/multipoint.hpp"

namespace rootrefine {

namespace {

using Clock = std::chrono::steady_clock;
constexpr Bits kLow = 64;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

Real low_abs(const Complex& z) { return abs(z.at_precision(kLow)); }

// p and p' at every point by multipoint evaluation, rounded back to λ.
// The evaluation runs at λ + loss so that the absolute error is below
// 2^{τ+1-λ} for each of the two polynomials.
struct PairValues {
  Coeffs values;
  Coeffs derivatives;
  Real value_error;
  Real derivative_error;
};

PairValues eval_pair(const Polynomial& p, const Polynomial& dp, std::span<const Complex> points,
                     const PrecisionContext& ctx) {
  const Bits prec = ctx.lambda();
  const Bits tau1 = std::max(p.tau(), dp.tau());
  const std::size_t block = multipoint_block_size(p.degree(), points.size());
  const Bits loss = multipoint_loss_bits(tau1, block, 1, point_magnitude_bits(points));
  const PrecisionContext wide = ctx.rescaled(prec + loss);
  const Polynomial both[] = {p, dp};
  auto evals = eval_many(std::span<const Polynomial>(both), points, wide);
  PairValues out;
  out.values = std::move(evals[0]);
  out.derivatives = std::move(evals[1]);
  for (auto& v : out.values) v.set_precision(prec);
  for (auto& v : out.derivatives) v.set_precision(prec);
  out.value_error = Real::pow2(p.tau() + 1 - prec, kLow);
  out.derivative_error = Real::pow2(dp.tau() + 1 - prec, kLow);
  return out;
}

// Σ|p_i|·R^i with R = |X| + ρ: the contour-proximity reference scale.
Real contour_mass(const Polynomial& p, const Complex& center, const Real& rho) {
  const Real reach = low_abs(center) + rho.at_precision(kLow);
  Real acc = Real::zero(kLow);
  for (std::size_t i = p.degree() + 1; i-- > 0;) {
    acc *= reach;
    acc += low_abs(p[i]);
  }
  return acc;
}

struct PendingBoost {
  std::size_t index = 0;
  std::size_t offset = 0;
  std::size_t q = 0;
  Real rho;
};

struct ActiveNewton {
  std::size_t index;
  NewtonTracker tracker;
};

}  // namespace

std::size_t AllRootsPlan::multiplicity(std::size_t i) const {
  return multiplicities.empty() ? 1 : multiplicities.at(i);
}

void AllRootsPlan::validate(std::size_t degree) const {
  if (discs.empty()) {
    throw ContractViolation("no discs");
  }
  if (!multiplicities.empty() && multiplicities.size() != discs.size()) {
    throw ContractViolation("multiplicity list length differs from the disc count");
  }
  if (!(epsilon.sign() > 0) || !(epsilon < 1.0)) {
    throw ContractViolation("target epsilon must satisfy 0 < epsilon < 1");
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < discs.size(); ++i) {
    total += multiplicity(i);
  }
  if (total > degree) {
    throw ContractViolation("discs claim more roots than the degree");
  }
  for (std::size_t i = 0; i < discs.size(); ++i) {
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      const Real gap = low_abs(discs[i].center - discs[j].center);
      const Real reach = discs[i].radius.at_precision(kLow) + discs[j].radius.at_precision(kLow);
      if (!(gap > reach)) {
        throw ContractViolation("discs " + std::to_string(i) + " and " + std::to_string(j) +
                                " overlap");
      }
    }
  }
}

DiscOutcome refine_one(const Polynomial& p, const IsolatedDisc& disc, const Real& epsilon,
                       std::size_t multiplicity, const PrecisionContext& ctx) {
  const auto start = Clock::now();
  DiscOutcome out;
  try {
    out.boost = boost_isolation(p, disc, ctx, multiplicity);
    out.q_used = out.boost->q_used;
    out.result = newton_refine(p, *out.boost, RefinementRequest{epsilon, multiplicity}, ctx);
  } catch (const Error& e) {
    out.error = e.what();
  }
  out.milliseconds = elapsed_ms(start);
  return out;
}

std::vector<DiscOutcome> refine_all(const Polynomial& p, const AllRootsPlan& plan,
                                    const PrecisionContext& ctx) {
  if (p.degree() < 1) {
    throw ContractViolation("refine_all requires degree >= 1");
  }
  const std::size_t d = p.degree();
  plan.validate(d);
  const auto start = Clock::now();
  const Bits prec = ctx.lambda();
  const Polynomial pl = p.at_precision(prec);
  const Polynomial dp = derivative(pl);
  std::vector<DiscOutcome> out(plan.discs.size());

  // Stage 1: contour points of every simple-root disc in one batch.
  std::vector<PendingBoost> pending;
  Coeffs points;
  for (std::size_t i = 0; i < plan.discs.size(); ++i) {
    const IsolatedDisc& disc = plan.discs[i];
    const std::size_t m = plan.multiplicity(i);
    if (m > 1) {
      out[i] = refine_one(p, disc, plan.epsilon, m, ctx);
      out[i].milliseconds = elapsed_ms(start);
      continue;
    }
    try {
      const std::size_t q = boost_contour_size(disc, d);
      PendingBoost pb;
      pb.index = i;
      pb.offset = points.size();
      pb.q = q;
      pb.rho = disc.contour_radius().at_precision(prec);
      const auto roots = DftPlan::get(q, ctx);
      const Complex x0 = disc.center.at_precision(prec);
      for (std::size_t j = 0; j < q; ++j) {
        Complex x = roots->root(j) * pb.rho;
        x += x0;
        points.push_back(std::move(x));
      }
      out[i].q_used = q;
      pending.push_back(std::move(pb));
    } catch (const Error& e) {
      out[i].error = e.what();
      out[i].milliseconds = elapsed_ms(start);
    }
  }

  std::vector<ActiveNewton> active;
  if (!points.empty()) {
    const PairValues ev = eval_pair(pl, dp, points, ctx);
    for (const auto& pb : pending) {
      const IsolatedDisc& disc = plan.discs[pb.index];
      DiscOutcome& o = out[pb.index];
      try {
        ContourSamples s;
        s.values.assign(ev.values.begin() + static_cast<std::ptrdiff_t>(pb.offset),
                        ev.values.begin() + static_cast<std::ptrdiff_t>(pb.offset + pb.q));
        s.derivatives.reserve(pb.q);
        for (std::size_t j = 0; j < pb.q; ++j) {
          s.derivatives.push_back(ev.derivatives[pb.offset + j] * pb.rho);
        }
        s.value_error = ev.value_error;
        s.derivative_error = ev.derivative_error * pb.rho.at_precision(kLow);
        s.guard_scale = contour_mass(pl, disc.center, pb.rho);
        const QuotientVector qv = quotient_vector(s, ctx);
        const auto est = estimates_from_quotients(qv, 1, disc.separation(), d, ctx);
        check_root_count(est[0], 1);
        const PowerSumEstimate& s1 = est[1];

        const Real delta = boost_threshold(disc, d);
        const Real target_w = delta / pb.rho.at_precision(kLow);
        if (s1.error_radius > target_w) {
          throw InsufficientPrecision("working precision too low for the boost target");
        }
        BoostResult b;
        b.center = s1.value * pb.rho;
        b.center += disc.center.at_precision(prec);
        b.delta = delta;
        b.q_used = pb.q;
        b.estimate_error = s1.error_radius * pb.rho.at_precision(kLow);
        const std::size_t cap = 4 * newton_iteration_budget(delta, plan.epsilon) + 8;
        active.push_back({pb.index, NewtonTracker(b.center, delta, plan.epsilon, cap)});
        o.boost = std::move(b);
      } catch (const Error& e) {
        o.error = e.what();
        o.milliseconds = elapsed_ms(start);
      }
    }
  }

  // Stage 2: Newton sweeps, each one multipoint evaluation at all iterates.
  while (!active.empty()) {
    Coeffs xs;
    xs.reserve(active.size());
    for (const auto& a : active) {
      xs.push_back(a.tracker.current());
    }
    const PairValues ev = eval_pair(pl, dp, xs, ctx);
    std::vector<ActiveNewton> still;
    for (std::size_t k = 0; k < active.size(); ++k) {
      auto& a = active[k];
      DiscOutcome& o = out[a.index];
      try {
        const Real f_error = ev.value_error;
        if (a.tracker.advance(ev.values[k], ev.derivatives[k], f_error) ==
            NewtonTracker::Status::Converged) {
          o.result = a.tracker.result(low_abs(eval(pl, a.tracker.current())));
          o.milliseconds = elapsed_ms(start);
        } else {
          still.push_back(std::move(a));
        }
      } catch (const Error& e) {
        o.error = e.what();
        o.milliseconds = elapsed_ms(start);
      }
    }
    active = std::move(still);
  }
  return out;
}

Coeffs elementary_from_power_sums(std::span<const Complex> sums, const PrecisionContext& ctx) {
  const Bits prec = ctx.lambda();
  const std::size_t m = sums.size();
  Coeffs e;
  e.reserve(m + 1);
  e.push_back(Complex::one(prec));
  Complex t = Complex::zero(prec);
  for (std::size_t k = 1; k <= m; ++k) {
    Complex acc = Complex::zero(prec);
    for (std::size_t i = 1; i <= k; ++i) {
      t = e[k - i];
      t *= sums[i - 1];
      if (i % 2 == 1) {
        acc += t;
      } else {
        acc -= t;
      }
    }
    acc /= static_cast<long>(k);
    e.push_back(std::move(acc));
  }
  return e;
}

Coeffs factor_from_power_sums(std::span<const Complex> sums, const PrecisionContext& ctx) {
  const Coeffs e = elementary_from_power_sums(sums, ctx);
  const std::size_t m = sums.size();
  Coeffs f(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    f[m - k] = (k % 2 == 0) ? e[k] : -e[k];
  }
  return f;
}

Coeffs remainder_by_division(const Polynomial& p, const Polynomial& f, const PrecisionContext& ctx) {
  const Bits prec = ctx.lambda();
  const std::size_t m = f.degree();
  if (m == 0) {
    return {};
  }
  Coeffs r;
  r.reserve(p.degree() + 1);
  for (const auto& c : p.coeffs()) {
    r.push_back(c.at_precision(prec));
  }
  if (p.degree() < m) {
    return r;
  }
  Complex lead_inv = Complex::one(prec);
  lead_inv /= f.leading();
  Complex t = Complex::zero(prec);
  for (std::size_t i = p.degree() + 1; i-- > m;) {
    Complex c = r[i] * lead_inv;
    for (std::size_t j = 0; j <= m; ++j) {
      t = c;
      t *= f[j];
      r[i - m + j] -= t;
    }
  }
  r.resize(m);
  return r;
}

Factor extract_factor(const Polynomial& p, const IsolatedDisc& disc, const PrecisionContext& ctx) {
  disc.validate();
  const Bits prec = ctx.lambda();
  const Polynomial pl = p.at_precision(prec);
  const auto count = power_sums_in_disc(pl, disc, 0, 0.25, ctx).front();
  if (!(count.error_radius < 0.5)) {
    throw InsufficientPrecision("root count of the disc is not certified to within 1/2");
  }
  const long rounded = std::lround(count.value.real().to_double());
  if (rounded < 1) {
    throw ContractViolation("disc contains no roots");
  }
  const auto m = static_cast<std::size_t>(rounded);
  if (disc.claimed_root_count && *disc.claimed_root_count != m) {
    throw ContractViolation("disc holds " + std::to_string(m) + " roots, " +
                            std::to_string(*disc.claimed_root_count) + " were declared");
  }
  if (m > p.degree()) {
    throw ContractViolation("root count exceeds the degree");
  }

  // Local power sums tight enough that the mapped coefficients keep ℓ bits.
  const double reach = low_abs(disc.center).to_double() + disc.radius.to_double();
  const double md = static_cast<double>(m);
  const double log2_delta = -(static_cast<double>(ctx.ell()) + md * std::log2(2.0 + reach) +
                              2.0 * md + 2.0 * std::log2(md + 1.0) + 8.0);
  const auto sums = power_sums_in_disc_log2(pl, disc, m, log2_delta, ctx);
  Coeffs s;
  s.reserve(m);
  for (std::size_t k = 1; k <= m; ++k) {
    if (sums[k].error_radius.log2_abs() > log2_delta) {
      throw InsufficientPrecision("working precision too low for the factor target");
    }
    s.push_back(sums[k].value);
  }

  // F(y) with y = (x - X)/r, then f(x) = r^m·F((x - X)/r).
  const Polynomial local(factor_from_power_sums(s, ctx), prec);
  const Real r = disc.radius.at_precision(prec);
  Real inv_r = Real(1.0, prec);
  inv_r /= r;
  Complex shift = -disc.center.at_precision(prec);
  shift *= inv_r;
  Polynomial mapped = taylor_shift_scale(local, shift, inv_r);
  Coeffs c = mapped.coeffs();
  Real rm = Real(1.0, prec);
  for (std::size_t k = 0; k < m; ++k) {
    rm *= r;
  }
  for (auto& x : c) {
    x *= rm;
  }
  c.back() = Complex::one(prec);

  Factor out{Polynomial(std::move(c), prec), Real::zero(kLow), m};
  const Coeffs rem = remainder_by_division(pl, out.poly, ctx);
  Real worst = Real::zero(kLow);
  for (const auto& x : rem) {
    const Real a = low_abs(x);
    if (a > worst) worst = a;
  }
  Real scale = Real::zero(kLow);
  for (const auto& x : pl.coeffs()) {
    const Real a = low_abs(x);
    if (a > scale) scale = a;
  }
  out.residual = worst / scale;
  return out;
}

}  // namespace rootrefine
