#pragma once

// All-roots refinement from d isolated discs, and extraction of the factor
// whose roots are the roots of p inside one disc.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rootrefine/isolation_boost.hpp"
#include "rootrefine/newton.hpp"
#include "rootrefine/numctx.hpp"
#include "rootrefine/poly.hpp"
#include "rootrefine/powersum.hpp"

namespace rootrefine {

struct AllRootsPlan {
  std::vector<IsolatedDisc> discs;
  Real epsilon;
  /// One entry per disc, or empty for all simple roots.
  std::vector<std::size_t> multiplicities;

  std::size_t multiplicity(std::size_t i) const;
  /// Rejects an empty disc list, a multiplicity list of the wrong length and
  /// discs that are not pairwise disjoint (|X_i - X_j| > r_i + r_j).
  void validate(std::size_t degree) const;
};

struct DiscOutcome {
  std::optional<BoostResult> boost;
  std::optional<RefinementResult> result;
  /// Empty on success.
  std::string error;
  std::size_t q_used = 0;
  /// Wall time from the start of the batch until this disc finished.
  double milliseconds = 0.0;

  bool ok() const { return result.has_value() && error.empty(); }
};

/// Boosts every disc from one multipoint evaluation of p and p' at all
/// contour points, then runs Newton on all simple roots with each sweep
/// batched through eval_many. Discs with multiplicity > 1 go through the
/// single-disc path. Per-disc failures are recorded in the outcome and do
/// not stop the other discs. Output order follows plan.discs.
std::vector<DiscOutcome> refine_all(const Polynomial& p, const AllRootsPlan& plan,
                                    const PrecisionContext& ctx);

/// Boost + Newton for one disc.
DiscOutcome refine_one(const Polynomial& p, const IsolatedDisc& disc, const Real& epsilon,
                       std::size_t multiplicity, const PrecisionContext& ctx);

struct Factor {
  /// Monic factor in the global variable x.
  Polynomial poly;
  /// max|p mod f| / max|p_i|, computed at working precision.
  Real residual;
  std::size_t root_count = 0;
};

/// e_0..e_m from s_1..s_m via k·e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} s_i.
Coeffs elementary_from_power_sums(std::span<const Complex> sums, const PrecisionContext& ctx);

/// Monic y^m - e_1 y^{m-1} + e_2 y^{m-2} - ... from s_1..s_m, low-to-high.
Coeffs factor_from_power_sums(std::span<const Complex> sums, const PrecisionContext& ctx);

/// Factor of p whose roots are the roots inside `disc`. The root count is
/// s_0^* rounded; it must agree with disc.claimed_root_count when present
/// (ContractViolation) and s_0^* must be certified to within 1/2
/// (InsufficientPrecision).
Factor extract_factor(const Polynomial& p, const IsolatedDisc& disc, const PrecisionContext& ctx);

/// Remainder of p modulo a monic f by long division at the context precision.
Coeffs remainder_by_division(const Polynomial& p, const Polynomial& f, const PrecisionContext& ctx);

}  // namespace rootrefine
