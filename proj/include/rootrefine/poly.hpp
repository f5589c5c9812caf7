#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rootrefine/numctx.hpp"

namespace rootrefine {

/// Dense coefficient sequence, index i holds the coefficient of x^i. Used
/// where a nonzero leading coefficient cannot be guaranteed (remainders,
/// intermediate products).
using Coeffs = std::vector<Complex>;

/// Univariate complex polynomial p(x) = Σ p_i x^i with p_d ≠ 0.
///
/// Coefficients share one precision. τ is recomputed on every construction
/// as max(0, ⌈lg max|p_i|⌉); it is never taken from the caller.
class Polynomial {
 public:
  /// Trailing (high-order) zero coefficients are dropped. Throws
  /// ContractViolation for the zero polynomial.
  explicit Polynomial(Coeffs coeffs);
  Polynomial(Coeffs coeffs, Bits precision);

  /// Monic polynomial Π (x - root).
  static Polynomial from_roots(std::span<const Complex> roots, Bits precision);

  std::size_t degree() const { return coeffs_.size() - 1; }
  Bits tau() const { return tau_; }
  Bits precision() const { return precision_; }
  const Coeffs& coeffs() const { return coeffs_; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }
  const Complex& leading() const { return coeffs_.back(); }

  Polynomial at_precision(Bits precision) const;
  /// lg of max |p_i| (real valued, may be negative).
  double log2_max_coeff() const;

 private:
  Coeffs coeffs_;
  Bits precision_;
  Bits tau_;
};

/// q-fold of a polynomial: p_{q,i} = Σ_j p_{i+jq}. Agrees with p at every
/// q-th root of unity.
struct FoldedPolynomial {
  std::size_t q = 0;
  Coeffs coeffs;
};

/// Horner evaluation at the precision of the wider operand.
Complex eval(const Polynomial& p, const Complex& x);
Complex eval(std::span<const Complex> coeffs, const Complex& x);

/// p(x) and p'(x) in one Horner pass.
struct ValueAndDerivative {
  Complex value;
  Complex derivative;
};
ValueAndDerivative eval_with_derivative(const Polynomial& p, const Complex& x);

/// p'. Rejects constant polynomials.
Polynomial derivative(const Polynomial& p);
/// k-th derivative (k = 0 returns p). Rejects k > deg p.
Polynomial derivative(const Polynomial& p, std::size_t order);

/// Coefficient reversal x^d p(1/x). When p_0 = 0 the leading zeros are
/// stripped and `degree_drop` reports how many were removed.
struct Reversed {
  Polynomial poly;
  std::size_t degree_drop = 0;
};
Reversed reverse(const Polynomial& p);

/// g(y) = p(X + r·y), by the O(d²) Horner shift followed by scaling.
/// Requires r > 0.
Polynomial taylor_shift_scale(const Polynomial& p, const Complex& center, const Real& radius);

/// Upper bound on τ after taylor_shift_scale: τ + d·⌈lg max(2, |X| + r)⌉.
Bits shifted_tau_bound(const Polynomial& p, const Complex& center, const Real& radius);

/// Folds p to length q using fewer than d additions. Requires q >= 1.
FoldedPolynomial fold(const Polynomial& p, std::size_t q);

}  // namespace rootrefine
