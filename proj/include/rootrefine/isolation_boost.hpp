#pragma once

#include <cstddef>

#include "rootrefine/numctx.hpp"
#include "rootrefine/poly.hpp"
#include "rootrefine/powersum.hpp"

namespace rootrefine {

/// A 5d²-isolated start for Newton: the true root lies in D(center, delta)
/// and delta <= 0.2·r·η/d².
struct BoostResult {
  Complex center;
  Real delta;
  std::size_t q_used = 0;
  /// Certified radius of the s_1 estimate mapped to the x frame (<= delta).
  Real estimate_error;
};

/// Target radius 0.2·r·η/d² for a disc of radius r with isolation (1+η)².
Real boost_threshold(const IsolatedDisc& disc, std::size_t degree);

/// Contour points for the boost of `disc`: the smallest power of two (at
/// least 4) whose truncation bound on s_1 meets half of Δ·m/ρ.
std::size_t boost_contour_size(const IsolatedDisc& disc, std::size_t degree,
                               std::size_t multiplicity = 1);

/// Throws ContractViolation when s_0 is certified to within 1/2 and rounds to
/// something other than the declared multiplicity.
void check_root_count(const PowerSumEstimate& s0, std::size_t multiplicity);

/// Replaces `disc`, which holds one root of the given multiplicity, by a
/// disc of radius Δ = 0.2·r·η/d² around the power-sum estimate of the root.
/// For multiplicity m the first power sum is m times the root.
///
/// Throws ContractViolation for isolation <= 1 or a wrong root count, ContourProximityError from
/// the estimator, and InsufficientPrecision when rounding alone exceeds Δ.
BoostResult boost_isolation(const Polynomial& p, const IsolatedDisc& disc,
                            const PrecisionContext& ctx, std::size_t multiplicity = 1);

}  // namespace rootrefine
