#include <doctest.h>

#include <cmath>

#include "rootrefine/dft.hpp"
#include "rootrefine/errors.hpp"
#include "rootrefine/isolation_boost.hpp"
#include "support/oracles.hpp"
#include "support/suites.hpp"

using namespace rootrefine;
using testing::lg_dist;

namespace {

IsolatedDisc make_disc(double x, double r, double iso, Bits prec) {
  IsolatedDisc d;
  d.center = Complex(x, 0.0, prec);
  d.radius = Real(r, prec);
  d.isolation = iso;
  return d;
}

Polynomial real_roots(std::initializer_list<double> roots, Bits prec) {
  std::vector<Complex> z;
  for (double x : roots) z.emplace_back(x, 0.0, prec);
  return Polynomial(testing::naive_from_roots(z, prec), prec);
}

}  // namespace

TEST_CASE("boost threshold") {
  // η = 1 means isolation 4
  CHECK(boost_threshold(make_disc(0, 0.5, 4.0, 64), 2).to_double() == doctest::Approx(0.025));
  CHECK(boost_threshold(make_disc(0, 1.0, 2.25, 64), 10).to_double() ==
        doctest::Approx(0.2 * 0.5 / 100));
}

TEST_CASE("linear polynomial") {
  const Bits prec = 128;
  const auto ctx = PrecisionContext::for_target(100, 3, 1);
  const Polynomial p = real_roots({4.0}, prec);
  const BoostResult b = boost_isolation(p, make_disc(4.0, 1.0, 1e6, prec), ctx);
  CHECK(lg_dist(b.center, Complex(4.0, 0.0, prec)) <= -90);
  CHECK(b.delta.to_double() == doctest::Approx(0.2 * (1000.0 - 1.0)));
  CHECK(b.q_used >= 4);
}

TEST_CASE("isolated root among integers") {
  const Bits prec = 256;
  const Polynomial p = real_roots({0.5, 3, 5, 7}, prec);
  const IsolatedDisc disc = make_disc(0.5, 0.9, 2.5 / 0.9, prec);
  const auto ctx = PrecisionContext::for_target(128, shifted_tau_bound(p, disc.center, disc.radius), 4);
  const BoostResult b = boost_isolation(p, disc, ctx);
  CHECK(abs(b.center - Complex(0.5, 0.0, prec)) <= b.delta);
  CHECK(b.estimate_error <= b.delta);
}

TEST_CASE("double root with declared multiplicity") {
  const Bits prec = 256;
  const Polynomial p = real_roots({1, 1, 3}, prec);
  IsolatedDisc disc = make_disc(1.1, 0.5, 3.5, prec);
  const auto ctx = PrecisionContext::for_target(128, shifted_tau_bound(p, disc.center, disc.radius), 3);
  const BoostResult b = boost_isolation(p, disc, ctx, 2);
  CHECK(abs(b.center - Complex(1.0, 0.0, prec)) <= b.delta);
  CHECK_THROWS_AS(boost_isolation(p, disc, ctx, 4), ContractViolation);
}

TEST_CASE("boost rejects bad discs") {
  const Bits prec = 128;
  const auto ctx = PrecisionContext::with_lambda(prec);
  const Polynomial p = real_roots({0, 2}, prec);
  CHECK_THROWS_AS(boost_isolation(p, make_disc(0, 0.5, 1.0, prec), ctx), ContractViolation);
  CHECK_THROWS_AS(boost_isolation(p, make_disc(0, 0.0, 4.0, prec), ctx), ContractViolation);
  // empty disc, and a disc with both roots
  CHECK_THROWS_WITH_AS(boost_isolation(p, make_disc(5, 0.5, 4.0, prec), ctx), doctest::Contains("holds 0"),
                       ContractViolation);
  CHECK_THROWS_WITH_AS(boost_isolation(p, make_disc(1, 1.5, 4.0, prec), ctx), doctest::Contains("holds 2"),
                       ContractViolation);
  // contour of radius 2 through the second root
  CHECK_THROWS_AS(boost_isolation(p, make_disc(0, 1.0, 4.0, prec), ctx), ContourProximityError);
}

TEST_CASE("containment and isolation on random instances") {
  testing::Generator gen(41);
  const Bits prec = 400;
  const auto ctx = PrecisionContext(400, 256, 64);
  // q grows like lg(d(1+1/η))/lg(1+η); with η >= 0.1 a constant of 24 covers it
  const double frozen_c = 24.0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + gen.index(31);
    const double eta = gen.uniform(0.1, 1.0);
    const auto in = testing::isolated_instance(gen, d, eta, prec);
    const BoostResult b = boost_isolation(in.p, in.disc, ctx);
    const double dd = static_cast<double>(d);
    CHECK(b.delta.to_double() <= 0.2 * in.disc.radius.to_double() * eta / (dd * dd) * (1 + 1e-12));
    CHECK(abs(b.center - in.root()) <= b.delta);
    CHECK(testing::nearest_other(in.roots, in.target, b.center) / b.delta.to_double() >= 5 * dd * dd);
    const double cap = frozen_c * std::log2(dd * (1.0 + 1.0 / eta));
    CHECK(b.q_used <= next_power_of_two(static_cast<std::size_t>(std::ceil(cap))));
  }
}

TEST_CASE("contour size rule") {
  const IsolatedDisc disc = make_disc(0, 1.0, 4.0, 64);
  const std::size_t q = boost_contour_size(disc, 8);
  const Real rho = disc.contour_radius();
  const double target = boost_threshold(disc, 8).to_double() / rho.to_double();
  CHECK(series_bound(0.5, 1, 8, q) <= target / 2);
  CHECK(series_bound(0.5, 1, 8, q / 2) > target / 2);
  CHECK(boost_contour_size(make_disc(0, 1.0, 1e6, 64), 1) == 4);
}
