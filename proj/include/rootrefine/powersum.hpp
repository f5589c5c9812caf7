#pragma once

// Power sums of the roots inside an isolated disc, estimated from values of
// p'/p on a circle of q equally spaced points.
//
// Frames. For a disc D(X, r) with isolation ratio R/r = (1+η)², the contour
// is the mid-circle |x - X| = ρ with ρ = r(1+η). In the contour frame
// w = (x - X)/ρ the enclosed roots satisfy |w| <= z and the others |w| >= 1/z,
// z = 1/(1+η). Results of power_sums_in_disc are reported in the disc frame
// y = (x - X)/r, i.e. multiplied by (1+η)^k.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rootrefine/numctx.hpp"
#include "rootrefine/poly.hpp"

namespace rootrefine {

struct IsolatedDisc {
  Complex center;
  Real radius;
  /// Certified ratio R/r of the root-free annulus around the disc; > 1.
  double isolation = 0.0;
  std::optional<std::size_t> claimed_root_count;

  double eta() const;
  /// 1/(1+η): the separation parameter of the contour frame.
  double separation() const;
  /// ρ = r(1+η), radius of the evaluation contour.
  Real contour_radius() const;
  /// Throws ContractViolation unless r > 0 and isolation > 1.
  void validate() const;
};

struct PowerSumEstimate {
  std::size_t k = 0;
  Complex value;
  /// Series truncation bound plus the rounding radius of the evaluation.
  Real error_radius;
  std::size_t q_used = 0;
};

/// (z^{q+k} + (d-1) z^{q-k}) / (1 - z^q), returned as its base-2 logarithm.
double series_bound_log2(double z, std::size_t k, std::size_t degree, std::size_t q);
double series_bound(double z, std::size_t k, std::size_t degree, std::size_t q);

/// Smallest power of two q > k with series_bound(z, k, d, q) <= delta.
/// Throws ContractViolation unless 0 < z < 1 and delta > 0.
std::size_t select_q(double z, std::size_t k, std::size_t degree, double delta);
/// Same, with the target given as lg(delta) so that targets below the double
/// range can be expressed.
std::size_t select_q_log2(double z, std::size_t k, std::size_t degree, double log2_delta);

/// Estimates s_0..s_kmax for the roots of p inside the unit circle, where z
/// bounds the inner roots (|z_j| <= z) and the outer ones (|z_j| >= 1/z).
/// q must be a power of two >= 2 and kmax <= q - 2.
///
/// Uses three transforms of size q: p and p' at the q-th roots of unity (via
/// the fold), then [ω^{j(k+1)}] applied to v_j = p'(ω^j)/p(ω^j).
/// Throws ContourProximityError when |p(ω^j)| < 2^{-λ/2}·max|p_i|.
std::vector<PowerSumEstimate> power_sums_unit_disc(const Polynomial& p, std::size_t q,
                                                   std::size_t kmax, double z,
                                                   const PrecisionContext& ctx);

/// How contour values are obtained inside a disc.
enum class ContourPath {
  /// g(w) = p(X + ρw) by Taylor shift, then fold + DFT.
  TaylorShift,
  /// Horner evaluation of p and p' at X + ρω^j with the chain-rule factor ρ.
  DirectEvaluation,
};

/// Power sums of the roots in `disc`, in the disc frame y = (x - X)/r. q is
/// chosen so that the truncation part of every error radius is at most
/// delta/2 (delta measured in the disc frame).
std::vector<PowerSumEstimate> power_sums_in_disc(const Polynomial& p, const IsolatedDisc& disc,
                                                 std::size_t kmax, double delta,
                                                 const PrecisionContext& ctx,
                                                 ContourPath path = ContourPath::TaylorShift);
/// Same, with the target given as lg(delta).
std::vector<PowerSumEstimate> power_sums_in_disc_log2(const Polynomial& p, const IsolatedDisc& disc,
                                                      std::size_t kmax, double log2_delta,
                                                      const PrecisionContext& ctx,
                                                      ContourPath path = ContourPath::TaylorShift);

/// Estimate from the shifted matrix c·[1] + [ω^{j(k+1)}] applied to the
/// quotient vector of `disc` with q contour points, in the contour frame:
///   value = s_k^* + c·(1/q)·Σ_j v_j.
/// The rank-one term costs O(q) extra operations. The error radius is the
/// radius of s_k^* plus |c| times the rounding radius of the quotient sum.
PowerSumEstimate shifted_power_sums(const Polynomial& p, const IsolatedDisc& disc,
                                    const Complex& c, std::size_t q, const PrecisionContext& ctx,
                                    std::size_t k = 1,
                                    ContourPath path = ContourPath::DirectEvaluation);

/// Values of p and of d/dw p(X + ρw) at the q contour points, with absolute
/// error bounds. Used by the batched driver, which obtains them by
/// multipoint evaluation.
struct ContourSamples {
  Coeffs values;
  Coeffs derivatives;
  Real value_error;
  Real derivative_error;
  /// Reference magnitude for the contour-proximity guard (max coefficient).
  Real guard_scale;
};

/// Quotient vector v_j = derivative_j / value_j with a per-entry error bound.
struct QuotientVector {
  Coeffs v;
  /// (1/q)·Σ_j |δv_j| + transform rounding, an absolute bound on the error
  /// of every (1/q)(Ωv)_h.
  Real rounding_radius;
};

QuotientVector quotient_vector(const ContourSamples& samples, const PrecisionContext& ctx);

/// s_k^* = (1/q)·Σ_j ω^{j(k+1)} v_j for k = 0..kmax with error radii. A
/// non-null `shift` c adds c·(1/q)·Σ_j v_j to every entry.
std::vector<PowerSumEstimate> estimates_from_quotients(const QuotientVector& qv, std::size_t kmax,
                                                       double z, std::size_t degree,
                                                       const PrecisionContext& ctx,
                                                       const Complex* shift = nullptr);

}  // namespace rootrefine
