#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "rootrefine/numctx.hpp"
#include "rootrefine/poly.hpp"

namespace rootrefine {

/// Radix-2 transform of size q with the table ω_q^j, 0 <= j < q, at a fixed
/// working precision. Immutable once built; shared through `get`.
class DftPlan {
 public:
  DftPlan(std::size_t q, const PrecisionContext& ctx);

  /// Cached plan for (q, λ). Thread safe.
  static std::shared_ptr<const DftPlan> get(std::size_t q, const PrecisionContext& ctx);

  std::size_t size() const { return roots_.size(); }
  Bits precision() const { return precision_; }
  const Complex& root(std::size_t j) const { return roots_[j]; }
  std::span<const Complex> roots() const { return roots_; }

 private:
  Bits precision_;
  Coeffs roots_;
};

/// output[h] = Σ_i ω^{hi} v[i], in O(q log q) operations.
Coeffs dft_forward(const DftPlan& plan, std::span<const Complex> v);
/// output[h] = (1/q) Σ_i ω^{-hi} v[i].
Coeffs dft_inverse(const DftPlan& plan, std::span<const Complex> v);

/// p(ω^j) for every j, via the fold identity p_q(ω^j) = p(ω^j).
Coeffs eval_at_roots(const FoldedPolynomial& fp, const DftPlan& plan);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

}  // namespace rootrefine
