#pragma once

#include <cstddef>
#include <vector>

#include "rootrefine/isolation_boost.hpp"
#include "rootrefine/numctx.hpp"
#include "rootrefine/poly.hpp"

namespace rootrefine {

struct RefinementRequest {
  /// Output error bound ε, 0 < ε < 1.
  Real epsilon;
  std::size_t multiplicity = 1;

  /// ε = 2^{-bits}.
  static RefinementRequest with_bits(long bits, std::size_t multiplicity = 1);
  void validate(std::size_t degree) const;
};

struct RefinementResult {
  Complex root;
  /// Certified bound on |root - α|; <= ε on success.
  Real error_radius;
  /// Newton updates applied (zero corrections are not counted).
  std::size_t iterations = 0;
  /// |p(root)| at working precision.
  Real residual;
  /// x_0, x_1, ... including the returned root.
  std::vector<Complex> iterates;
};

/// One Newton correction x - f(x)/f'(x).
Complex newton_step(const Polynomial& f, const Complex& x);

/// ⌈lg lg(Δ/ε)⌉ + 3, the iteration budget for quadratic convergence from a
/// start within Δ of the root.
std::size_t newton_iteration_budget(const Real& start_radius, const Real& epsilon);

/// Stepwise Newton driver shared by the single-root and batched paths. The
/// caller supplies f(x_k), f'(x_k) and an absolute error bound on f(x_k).
///
/// A correction s_{k+1} counts as quadratic when |s_{k+1}|·Δ <= 4|s_k|² or
/// when it is already at the rounding floor. After two consecutive quadratic
/// corrections (or an exactly zero one) the error of x_{k+1} is certified as
/// 2|s_k| + 2·floor. Three consecutive non-quadratic corrections abort.
class NewtonTracker {
 public:
  enum class Status { Running, Converged };

  NewtonTracker(Complex start, Real start_radius, Real epsilon, std::size_t max_iterations);

  const Complex& current() const { return x_; }
  Status status() const { return status_; }

  /// Consumes f(x), f'(x) at current(). Throws DivergenceError or
  /// InsufficientPrecision.
  Status advance(const Complex& f, const Complex& fprime, const Real& f_error);

  RefinementResult result(const Real& residual) const;

 private:
  Complex x_;
  Real start_radius_;
  Real epsilon_;
  std::size_t max_iterations_;
  Status status_ = Status::Running;
  Real last_step_;
  bool have_last_ = false;
  int quadratic_run_ = 0;
  int bad_run_ = 0;
  std::size_t steps_ = 0;
  std::size_t iterations_ = 0;
  Real error_;
  std::vector<Complex> iterates_;
};

/// Newton iteration on p^{(m-1)} from the boosted center until the certified
/// error is at most ε.
RefinementResult newton_refine(const Polynomial& p, const BoostResult& start,
                               const RefinementRequest& request, const PrecisionContext& ctx);

/// Absolute Horner error bound u·(2d+4)·Σ|f_i||x|^i at precision λ.
Real horner_error_bound(const Polynomial& f, const Complex& x, Bits lambda);

}  // namespace rootrefine
