#include <doctest.h>

#include <cmath>

#include "rootrefine/errors.hpp"
#include "rootrefine/isolation_boost.hpp"
#include "rootrefine/newton.hpp"
#include "rootrefine/oracle.hpp"
#include "support/oracles.hpp"
#include "support/suites.hpp"

using namespace rootrefine;
using testing::lg_dist;

namespace {

Polynomial real_poly(std::initializer_list<double> c, Bits prec) {
  Coeffs out;
  for (double x : c) out.emplace_back(x, 0.0, prec);
  return Polynomial(std::move(out), prec);
}

BoostResult start_at(double x, double delta, Bits prec) {
  BoostResult b;
  b.center = Complex(x, 0.0, prec);
  b.delta = Real(delta, 64);
  b.estimate_error = Real(delta, 64);
  return b;
}

}  // namespace

TEST_CASE("single Newton step") {
  const Polynomial p = real_poly({-2, 0, 1}, 128);
  const Complex x1 = newton_step(p, Complex(1.5, 0.0, 128));
  const Complex expect(Real(17.0, 128) / Real(12.0, 128), Real::zero(128));
  CHECK(lg_dist(x1, expect) <= -126);
}

TEST_CASE("exact on linear maps") {
  const auto ctx = PrecisionContext::with_lambda(200);
  const Polynomial p = real_poly({-0.625, 1}, 200);
  const auto r = newton_refine(p, start_at(3.0, 4.0, 200), RefinementRequest::with_bits(150), ctx);
  CHECK(r.iterations == 1);
  CHECK(r.root == Complex(0.625, 0.0, 200));
  CHECK(r.error_radius.to_double() <= std::ldexp(1.0, -150));
  CHECK(r.iterates.size() == 2);

  const Polynomial sq = real_poly({1, -2, 1}, 200);
  const auto m2 = newton_refine(sq, start_at(1.3, 0.5, 200), RefinementRequest::with_bits(150, 2), ctx);
  CHECK(m2.iterations == 1);
  CHECK(m2.root == Complex(1.0, 0.0, 200));
}

TEST_CASE("request validation") {
  CHECK_THROWS_AS(RefinementRequest({Real(1.0, 64), 1}).validate(3), ContractViolation);
  CHECK_THROWS_AS(RefinementRequest({Real(0.0, 64), 1}).validate(3), ContractViolation);
  CHECK_THROWS_AS(RefinementRequest::with_bits(10, 0).validate(3), ContractViolation);
  CHECK_THROWS_AS(RefinementRequest::with_bits(10, 4).validate(3), ContractViolation);
  CHECK_NOTHROW(RefinementRequest::with_bits(10, 3).validate(3));
}

TEST_CASE("iteration budget") {
  CHECK(newton_iteration_budget(Real::pow2(-10, 64), Real::pow2(-256, 64)) == 11);
  CHECK(newton_iteration_budget(Real(1.0, 64), Real::pow2(-256, 64)) == 11);
  CHECK(newton_iteration_budget(Real(1.0, 64), Real(0.75, 64)) == 3);
}

TEST_CASE("divergence guard") {
  // x² + 1 from a real start: Newton stays on the real line and never settles
  const auto ctx = PrecisionContext::with_lambda(128);
  const Polynomial p = real_poly({1, 0, 1}, 128);
  CHECK_THROWS_AS(newton_refine(p, start_at(0.3, 1e-3, 128), RefinementRequest::with_bits(100), ctx),
                  DivergenceError);
}

TEST_CASE("rounding floor above the target") {
  const auto ctx = PrecisionContext::with_lambda(64);
  const Polynomial p = real_poly({-2, 0, 1}, 64);
  CHECK_THROWS_AS(newton_refine(p, start_at(1.4, 0.05, 64), RefinementRequest::with_bits(200), ctx),
                  InsufficientPrecision);
}

TEST_CASE("horner error bound covers the rounding") {
  testing::Generator gen(51);
  const Polynomial p(gen.gaussian_coeffs(40, 80), 80);
  for (int t = 0; t < 10; ++t) {
    const Complex x = gen.in_disc(1.3, 80);
    const Complex fast = eval(p, x);
    const Complex exact = testing::naive_eval(p.at_precision(600), x.at_precision(600));
    CHECK(lg_dist(fast, exact) <= horner_error_bound(p, x, 80).log2_abs());
  }
}

TEST_CASE("boosted starts converge quadratically to the oracle root") {
  testing::Generator gen(52);
  const Bits prec = 512;
  const auto ctx = PrecisionContext(prec, 256, 64);
  const Real eps = Real::pow2(-256, 64);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t d = 2 + gen.index(24);
    const double eta = gen.uniform(0.1, 1.0);
    const auto in = testing::isolated_instance(gen, d, eta, prec);
    const BoostResult b = boost_isolation(in.p, in.disc, ctx);
    const auto r = newton_refine(in.p, b, RefinementRequest{eps, 1}, ctx);

    // independent oracle root nearest the boosted center
    const auto oracle = oracle_roots(in.p, 600);
    double best = HUGE_VAL;
    std::size_t pick = 0;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      const double dist = lg_dist(oracle[i], b.center);
      if (dist < best) {
        best = dist;
        pick = i;
      }
    }
    const Complex& alpha = oracle[pick];
    CHECK(lg_dist(r.root, alpha) <= -256);
    CHECK(lg_dist(r.root, alpha) <= r.error_radius.log2_abs());
    CHECK(r.iterations <= 11);
    CHECK(r.residual.log2_abs() <= -200);

    const double gate = b.delta.log2_abs() - 10.0;
    const double floor = -static_cast<double>(prec - 64);
    for (std::size_t k = 0; k + 1 < r.iterates.size(); ++k) {
      const double ek = lg_dist(r.iterates[k], alpha);
      const double ek1 = lg_dist(r.iterates[k + 1], alpha);
      if (ek <= gate && ek1 > floor) {
        CHECK(ek1 <= 1.8 * ek);
      }
    }

    const auto again = newton_refine(in.p, b, RefinementRequest{eps, 1}, ctx);
    CHECK(again.root == r.root);
    CHECK(again.iterations == r.iterations);
  }
}

TEST_CASE("double root through the derivative") {
  const Bits prec = 300;
  const Polynomial p = real_poly({-3, 7, -5, 1}, prec);  // (x-1)²(x-3)
  IsolatedDisc disc;
  disc.center = Complex(1.05, 0.02, prec);
  disc.radius = Real(0.4, prec);
  disc.isolation = 4.0;
  const auto ctx = PrecisionContext::for_target(128, shifted_tau_bound(p, disc.center, disc.radius), 3);
  const BoostResult b = boost_isolation(p, disc, ctx, 2);
  const auto r = newton_refine(p, b, RefinementRequest::with_bits(128, 2), ctx);
  CHECK(lg_dist(r.root, Complex(1.0, 0.0, prec)) <= -128);
}
