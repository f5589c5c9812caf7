#include "rootrefine/isolation_boost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rootrefine/errors.hpp"

namespace rootrefine {

Real boost_threshold(const IsolatedDisc& disc, std::size_t degree) {
  const double d = static_cast<double>(degree);
  Real delta = disc.radius.at_precision(64);
  delta *= Real(0.2 * disc.eta() / (d * d), 64);
  return delta;
}

std::size_t boost_contour_size(const IsolatedDisc& disc, std::size_t degree,
                               std::size_t multiplicity) {
  disc.validate();
  const Real rho = disc.contour_radius().at_precision(64);
  Real target_w = boost_threshold(disc, degree);
  target_w *= Real(static_cast<double>(multiplicity), 64);
  target_w /= rho;
  const std::size_t q = select_q_log2(disc.separation(), 1, degree, target_w.log2_abs() - 1.0);
  return std::max<std::size_t>(q, 4);
}

void check_root_count(const PowerSumEstimate& s0, std::size_t multiplicity) {
  if (!(s0.error_radius < 0.5)) {
    return;
  }
  const long count = std::lround(s0.value.real().to_double());
  if (count != static_cast<long>(multiplicity)) {
    throw ContractViolation("disc holds " + std::to_string(count) + " roots counted with multiplicity, expected " +
                            std::to_string(multiplicity));
  }
}

BoostResult boost_isolation(const Polynomial& p, const IsolatedDisc& disc,
                            const PrecisionContext& ctx, std::size_t multiplicity) {
  disc.validate();
  if (multiplicity < 1 || multiplicity > p.degree()) {
    throw ContractViolation("multiplicity must lie in [1, degree]");
  }
  const Bits prec = ctx.lambda();
  const std::size_t d = p.degree();
  const double z = disc.separation();
  const Real rho = disc.contour_radius().at_precision(prec);
  const Real delta = boost_threshold(disc, d);

  // Error allowed on s_1 in the contour frame; half goes to truncation.
  Real target_w = delta * Real(static_cast<double>(multiplicity), 64) / rho.at_precision(64);
  const std::size_t q = boost_contour_size(disc, d, multiplicity);

  const Complex center = disc.center.at_precision(prec);
  const Polynomial g = taylor_shift_scale(p.at_precision(prec), center, rho);
  auto est = power_sums_unit_disc(g, q, 1, z, ctx);
  check_root_count(est[0], multiplicity);
  const PowerSumEstimate& s1 = est[1];
  if (s1.error_radius > target_w) {
    throw InsufficientPrecision("working precision too low for the boost target");
  }

  BoostResult out;
  Complex local = s1.value;
  local /= static_cast<long>(multiplicity);
  out.center = local * rho;
  out.center += center;
  out.delta = delta;
  out.q_used = q;
  out.estimate_error = s1.error_radius * rho.at_precision(64);
  out.estimate_error /= static_cast<long>(multiplicity);
  return out;
}

}  // namespace rootrefine
