#pragma once

// Multipoint evaluation by recursive remaindering down a subproduct tree.
//
// Accuracy follows the modular-representation bound: with inputs known to λ
// bits, remainders are accurate to ℓ = λ - loss where
//   loss = 4·(τ₁·⌈lg m⌉ + m·n·ρ + ⌈lg(mn)⌉ + 10),
// τ₁ bounds lg‖F‖, m is the number of moduli of degree n and ρ bounds lg of
// the modulus roots (floored at 1).

#include <cstddef>
#include <span>
#include <vector>

#include "rootrefine/numctx.hpp"
#include "rootrefine/poly.hpp"

namespace rootrefine {

struct SubproductTree {
  /// levels[0] holds the leaves (monic, degree <= n); levels.back() the root.
  std::vector<std::vector<Coeffs>> levels;
  /// inverses[l][i]: power-series inverse of the reversed node, truncated to
  /// the quotient length that remaindering from its parent needs.
  std::vector<std::vector<Coeffs>> inverses;
  std::size_t leaf_degree = 1;
  std::size_t point_count = 0;
  Bits rho = 1;
  Bits precision = 0;

  const Coeffs& root() const { return levels.back().front(); }
  std::size_t leaf_count() const { return levels.front().size(); }
};

/// max(1, ⌈lg max|point|⌉).
Bits point_magnitude_bits(std::span<const Complex> points);

Bits multipoint_loss_bits(Bits tau1, std::size_t moduli, std::size_t leaf_degree, Bits rho);

/// Points handled by one tree when evaluating a degree-`degree` polynomial:
/// the smallest power of two above the degree, capped by the point count.
std::size_t multipoint_block_size(std::size_t degree, std::size_t point_count);

/// Working precision that makes eval_many accurate to 2^{-ell}.
Bits multipoint_precision_for(Bits ell, Bits tau1, std::size_t degree, std::span<const Complex> points);

/// Product of two coefficient sequences: schoolbook for short inputs,
/// radix-2 FFT convolution otherwise.
Coeffs multiply(std::span<const Complex> a, std::span<const Complex> b, const PrecisionContext& ctx);

/// 1/h mod x^len for h_0 != 0, by Newton iteration on power series.
Coeffs series_inverse(std::span<const Complex> h, std::size_t len, const PrecisionContext& ctx);

/// F mod P for monic P, by reversal and power-series division. `inverse`
/// may hold a precomputed reversed inverse of P (any length).
Coeffs remainder(std::span<const Complex> f, std::span<const Complex> modulus,
                 const PrecisionContext& ctx, std::span<const Complex> inverse = {});

SubproductTree build_tree(std::span<const Complex> points, std::size_t leaf_degree,
                          const PrecisionContext& ctx);

/// F mod P_j for every leaf j, in leaf order.
std::vector<Coeffs> remainders(std::span<const Complex> f, const SubproductTree& tree,
                               const PrecisionContext& ctx);

Coeffs eval_many(const Polynomial& p, std::span<const Complex> points, const PrecisionContext& ctx);

/// Evaluates several polynomials at the same points, sharing the trees.
std::vector<Coeffs> eval_many(std::span<const Polynomial> polys, std::span<const Complex> points,
                              const PrecisionContext& ctx);

}  // namespace rootrefine
