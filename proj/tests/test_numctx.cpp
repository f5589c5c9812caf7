#include <doctest.h>

#include <cmath>

#include "rootrefine/errors.hpp"
#include "rootrefine/numctx.hpp"
#include "support/oracles.hpp"

using namespace rootrefine;

namespace {

// Closed form evaluated independently in long double.
long reference_precision(long ell, long tau, long d) {
  const long double lg = std::log2(static_cast<long double>(d));
  const long double v = ell + tau * std::log2(8.0L * d) + 1.5L * lg * lg + 6.5L * lg +
                        4.0L * std::log2(lg) + 18.0L;
  return static_cast<long>(std::ceil(v - 1e-12L));
}

}  // namespace

TEST_CASE("working precision closed form") {
  CHECK(working_precision_for(100, 8, 16) == 232);
  CHECK(working_precision_for(1, 0, 2) == 27);
  // 256 + 144 + 54 + 39 + 4·lg 6 + 18 = 521.34
  CHECK(working_precision_for(256, 16, 64) == 522);
  CHECK(working_precision_for(256, 16, 64) == reference_precision(256, 16, 64));
}

TEST_CASE("working precision is monotone and matches the reference") {
  for (long d : {2L, 3L, 5L, 16L, 17L, 100L, 1024L}) {
    long prev = 0;
    for (long ell : {1L, 10L, 64L, 200L}) {
      for (long tau : {0L, 1L, 8L, 40L}) {
        const long w = working_precision_for(ell, tau, d);
        CHECK(w == reference_precision(ell, tau, d));
        CHECK(w >= ell);
      }
      const long w0 = working_precision_for(ell, 0, d);
      CHECK(w0 >= prev);
      prev = w0;
    }
    CHECK(working_precision_for(50, 4, d + 1) >= working_precision_for(50, 4, d));
  }
}

TEST_CASE("working precision rejects bad arguments") {
  CHECK_THROWS_AS(working_precision_for(10, 0, 1), ContractViolation);
  CHECK_THROWS_AS(working_precision_for(0, 0, 4), ContractViolation);
  CHECK_THROWS_AS(working_precision_for(10, -1, 4), ContractViolation);
}

TEST_CASE("precision context") {
  const auto ctx = PrecisionContext::for_target(100, 8, 16);
  CHECK(ctx.lambda() == 232);
  CHECK(ctx.ell() == 100);
  CHECK(ctx.tau() == 8);
  const auto linear = PrecisionContext::for_target(100, 8, 1);
  CHECK(linear.lambda() == 116);
  CHECK_THROWS_AS(PrecisionContext(50, 60, 0), ContractViolation);
  CHECK(ctx.rescaled(500).lambda() == 500);
  CHECK(ctx.rescaled(500).ell() == 100);
  CHECK(ctx.rescaled(64).ell() == 64);
}

TEST_CASE("roots of unity") {
  const auto ctx = PrecisionContext::with_lambda(200);
  CHECK(root_of_unity(4, 1, ctx) == Complex(0.0, 1.0, 200));
  CHECK(root_of_unity(2, 1, ctx) == Complex(-1.0, 0.0, 200));
  CHECK(root_of_unity(7, 0, ctx) == Complex(1.0, 0.0, 200));

  Real half_root2 = sqrt(Real(2.0, 200));
  half_root2.scale2(-1);
  const Complex w8 = root_of_unity(8, 1, ctx);
  CHECK(w8 == Complex(half_root2, half_root2));

  for (long q : {3L, 8L, 12L, 64L, 100L}) {
    for (long j = 0; j < q; ++j) {
      const Complex w = root_of_unity(q, j, ctx);
      const Complex ref = testing::unit_phase(j, q, 200);
      CHECK(testing::lg_dist(w, ref) <= -198);
      CHECK((abs(w) - Real(1.0, 200)).log2_abs() <= 1 - 200);
      if (j > 0) {
        const Complex prod = w * root_of_unity(q, q - j, ctx);
        CHECK(testing::lg_dist(prod, Complex::one(200)) <= 2 - 200);
      }
    }
  }
}

TEST_CASE("real parsing and formatting") {
  const Real a = Real::parse("1.25e-3", 128);
  CHECK(a.to_double() == doctest::Approx(1.25e-3));
  const Real h = Real::parse("0x1.8p-1", 64);
  CHECK(h.to_double() == 0.75);
  CHECK_THROWS_AS(Real::parse("12abc", 64), ContractViolation);
  CHECK_THROWS_AS(Real::parse("", 64), ContractViolation);
  CHECK(Real(0.0, 64).to_decimal(10) == "0");
  CHECK(Real(-1.5, 64).to_decimal(5) == "-1.5000e0");

  // round trip at the printed digit count
  const Real third = Real(1.0, 300) / Real(3.0, 300);
  const int digits = static_cast<int>(std::ceil(300 * std::log10(2.0))) + 1;
  const Real back = Real::parse(third.to_decimal(digits), 300);
  CHECK(back == third);
}

TEST_CASE("complex arithmetic keeps the wider precision") {
  const Complex a(1.0, 2.0, 64);
  const Complex b(3.0, -1.0, 256);
  const Complex c = a * b;
  CHECK(c.precision() == 256);
  CHECK(c == Complex(5.0, 5.0, 256));
  Complex d = a;
  d /= b;
  CHECK(d.precision() == 64);
  CHECK(norm(Complex(3.0, 4.0, 64)) == Real(25.0, 64));
  CHECK(abs(Complex(3.0, 4.0, 64)) == Real(5.0, 64));
  CHECK(log2_abs(Complex(0.0, 8.0, 64)) == doctest::Approx(3.0));
  CHECK(std::isinf(log2_abs(Complex::zero(64))));
}

TEST_CASE("log2 beyond double range") {
  Real tiny = Real::pow2(-5000, 64);
  CHECK(tiny.log2_abs() == doctest::Approx(-5000.0));
  tiny *= Real(3.0, 64);
  CHECK(tiny.log2_abs() == doctest::Approx(-5000.0 + std::log2(3.0)));
}
