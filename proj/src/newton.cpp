#include "rootrefine/newton.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rootrefine/errors.hpp"

namespace rootrefine {

namespace {
constexpr Bits kLow = 64;

Real low_abs(const Complex& z) { return abs(z.at_precision(kLow)); }
}  // namespace

RefinementRequest RefinementRequest::with_bits(long bits, std::size_t multiplicity) {
  return {Real::pow2(-bits, kLow), multiplicity};
}

void RefinementRequest::validate(std::size_t degree) const {
  if (!(epsilon.sign() > 0) || !(epsilon < 1.0)) {
    throw ContractViolation("target epsilon must satisfy 0 < epsilon < 1");
  }
  if (multiplicity < 1 || multiplicity > degree) {
    throw ContractViolation("multiplicity must lie in [1, degree]");
  }
}

Complex newton_step(const Polynomial& f, const Complex& x) {
  auto vd = eval_with_derivative(f, x);
  Complex s = vd.value;
  s /= vd.derivative;
  Complex out = x;
  out -= s;
  return out;
}

std::size_t newton_iteration_budget(const Real& start_radius, const Real& epsilon) {
  const double ratio = start_radius.log2_abs() - epsilon.log2_abs();
  if (ratio <= 1.0) {
    return 3;
  }
  return static_cast<std::size_t>(std::ceil(std::log2(ratio))) + 3;
}

Real horner_error_bound(const Polynomial& f, const Complex& x, Bits lambda) {
  const Real ax = low_abs(x);
  Real acc = Real::zero(kLow);
  for (std::size_t i = f.degree() + 1; i-- > 0;) {
    acc *= ax;
    acc += low_abs(f[i]);
  }
  acc *= Real(2.0 * static_cast<double>(f.degree()) + 4.0, kLow);
  acc.scale2(1 - lambda);
  return acc;
}

NewtonTracker::NewtonTracker(Complex start, Real start_radius, Real epsilon,
                             std::size_t max_iterations)
    : x_(std::move(start)),
      start_radius_(start_radius.at_precision(kLow)),
      epsilon_(epsilon.at_precision(kLow)),
      max_iterations_(max_iterations),
      last_step_(Real::zero(kLow)),
      error_(Real::zero(kLow)) {
  if (start_radius_.sign() <= 0) {
    // a start exactly on the root still needs a positive scale
    start_radius_ = epsilon_;
  }
  iterates_.push_back(x_);
}

NewtonTracker::Status NewtonTracker::advance(const Complex& f, const Complex& fprime,
                                             const Real& f_error) {
  if (status_ == Status::Converged) {
    return status_;
  }
  if (fprime.is_zero()) {
    throw DivergenceError("Newton derivative vanished at the iterate");
  }
  Complex s = f.at_precision(x_.precision());
  s /= fprime;
  const Real step = low_abs(s);
  const Real floor = f_error.at_precision(kLow) / low_abs(fprime);

  const bool at_floor = step <= floor * Real(2.0, kLow);
  bool quadratic = false;
  if (have_last_) {
    Real lhs = step * start_radius_;
    Real rhs = last_step_ * last_step_;
    rhs *= 4;
    quadratic = step.is_zero() || lhs <= rhs || at_floor;
    if (quadratic) {
      ++quadratic_run_;
      bad_run_ = 0;
    } else {
      quadratic_run_ = 0;
      if (++bad_run_ >= 3) {
        throw DivergenceError("Newton corrections failed to contract quadratically; the start "
                              "disc is probably not isolated");
      }
    }
  }

  ++steps_;
  if (!step.is_zero()) {
    x_ -= s;
    ++iterations_;
    iterates_.push_back(x_);
  }

  const bool certifiable = step.is_zero() || quadratic_run_ >= 2 || (have_last_ && at_floor);
  Real err = step * Real(2.0, kLow);
  err += floor * Real(2.0, kLow);
  if (certifiable && err <= epsilon_) {
    error_ = err;
    status_ = Status::Converged;
    return status_;
  }
  if (have_last_ && at_floor && err > epsilon_) {
    throw InsufficientPrecision("Newton iteration reached the rounding floor above the target");
  }
  last_step_ = step;
  have_last_ = true;
  if (steps_ >= max_iterations_) {
    throw DivergenceError("Newton iteration budget exhausted");
  }
  return status_;
}

RefinementResult NewtonTracker::result(const Real& residual) const {
  RefinementResult r;
  r.root = x_;
  r.error_radius = error_;
  r.iterations = iterations_;
  r.residual = residual;
  r.iterates = iterates_;
  return r;
}

RefinementResult newton_refine(const Polynomial& p, const BoostResult& start,
                               const RefinementRequest& request, const PrecisionContext& ctx) {
  request.validate(p.degree());
  const Bits prec = ctx.lambda();
  const Polynomial pl = p.at_precision(prec);
  const Polynomial f = derivative(pl, request.multiplicity - 1);
  const std::size_t cap = 4 * newton_iteration_budget(start.delta, request.epsilon) + 8;
  NewtonTracker tracker(start.center.at_precision(prec), start.delta, request.epsilon, cap);
  while (tracker.status() == NewtonTracker::Status::Running) {
    const Complex& x = tracker.current();
    auto vd = eval_with_derivative(f, x);
    tracker.advance(vd.value, vd.derivative, horner_error_bound(f, x, prec));
  }
  return tracker.result(abs(eval(pl, tracker.current())).at_precision(kLow));
}

}  // namespace rootrefine
