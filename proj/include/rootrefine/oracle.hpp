#pragma once

// Reference root finder and disc generator used to check the refinement
// pipeline. Shares only the number and polynomial containers with it.

#include <cstddef>
#include <span>
#include <vector>

#include "rootrefine/numctx.hpp"
#include "rootrefine/poly.hpp"
#include "rootrefine/powersum.hpp"

namespace rootrefine {

/// All d roots of p by Aberth–Ehrlich iteration started on a perturbed
/// circle of the tight Cauchy radius. Each root is within 2^{-precision/2}
/// of a true root; results are checked by residual and pairwise separation.
///
/// Throws DivergenceError when the sweep budget runs out and
/// ContractViolation when two approximations coincide (multiple root).
std::vector<Complex> oracle_roots(const Polynomial& p, Bits precision);

/// Positive root of |p_d| x^d - Σ_{i<d} |p_i| x^i; every root of p lies in
/// the closed disc of this radius.
Real cauchy_radius(const Polynomial& p);

/// One disc per root: radius r_i = δ_i/(iso + 1/2) with δ_i the distance to
/// the nearest other root, center moved off the root by r_i/8. A lone root
/// gets radius 1 and isolation 10^6.
///
/// Throws ContractViolation when a root's neighbor lies closer than
/// 2^{-precision/4}·max(1, |z|), or iso <= 1.
std::vector<IsolatedDisc> discs_around(std::span<const Complex> roots, double isolation,
                                       Bits precision);

std::vector<IsolatedDisc> oracle_discs(const Polynomial& p, double isolation, Bits precision = 128);

}  // namespace rootrefine
