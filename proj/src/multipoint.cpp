#include "rootrefine/multipoint.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rootrefine/dft.hpp"
#include "rootrefine/errors.hpp"

namespace rootrefine {

namespace {

constexpr std::size_t kSchoolbookCutoff = 32;

Bits ceil_lg(std::size_t n) {
  Bits b = 0;
  while ((std::size_t{1} << b) < n) {
    ++b;
  }
  return b;
}

Coeffs schoolbook(std::span<const Complex> a, std::span<const Complex> b, Bits prec) {
  Coeffs c(a.size() + b.size() - 1, Complex::zero(prec));
  Complex t = Complex::zero(prec);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      t = a[i];
      t *= b[j];
      c[i + j] += t;
    }
  }
  return c;
}

Coeffs padded(std::span<const Complex> a, std::size_t n, Bits prec) {
  Coeffs out;
  out.reserve(n);
  for (const auto& x : a) {
    out.push_back(x.at_precision(prec));
  }
  while (out.size() < n) {
    out.push_back(Complex::zero(prec));
  }
  return out;
}

Coeffs truncated(Coeffs c, std::size_t n) {
  if (c.size() > n) {
    c.resize(n);
  }
  return c;
}

std::span<const Complex> head(std::span<const Complex> c, std::size_t n) {
  return c.first(std::min(n, c.size()));
}

// Monic Π (x - points[i]), low-to-high.
Coeffs linear_product(std::span<const Complex> points, Bits prec) {
  Coeffs c{Complex::one(prec)};
  for (const auto& pt : points) {
    const Complex r = pt.at_precision(prec);
    c.push_back(Complex::zero(prec));
    for (std::size_t i = c.size() - 1; i > 0; --i) {
      Complex t = r * c[i];
      c[i] = c[i - 1];
      c[i] -= t;
    }
    c[0] = -(r * c[0]);
  }
  return c;
}

Coeffs reversed(std::span<const Complex> c) { return Coeffs(c.rbegin(), c.rend()); }

}  // namespace

Bits point_magnitude_bits(std::span<const Complex> points) {
  double m = -HUGE_VAL;
  for (const auto& p : points) {
    m = std::max(m, log2_abs(p));
  }
  if (!std::isfinite(m)) {
    return 1;
  }
  return std::max<Bits>(1, static_cast<Bits>(std::ceil(m - 1e-12)));
}

Bits multipoint_loss_bits(Bits tau1, std::size_t moduli, std::size_t leaf_degree, Bits rho) {
  const Bits lg_m = ceil_lg(std::max<std::size_t>(moduli, 1));
  const Bits lg_mn = ceil_lg(std::max<std::size_t>(moduli * leaf_degree, 1));
  const Bits mn = static_cast<Bits>(moduli * leaf_degree);
  return 4 * (std::max<Bits>(tau1, 0) * lg_m + mn * std::max<Bits>(rho, 1) + lg_mn + 10);
}

std::size_t multipoint_block_size(std::size_t degree, std::size_t point_count) {
  return std::max<std::size_t>(1, std::min(point_count, next_power_of_two(degree + 1)));
}

Bits multipoint_precision_for(Bits ell, Bits tau1, std::size_t degree,
                              std::span<const Complex> points) {
  const std::size_t block = multipoint_block_size(degree, points.size());
  return ell + multipoint_loss_bits(tau1, block, 1, point_magnitude_bits(points));
}

Coeffs multiply(std::span<const Complex> a, std::span<const Complex> b, const PrecisionContext& ctx) {
  if (a.empty() || b.empty()) {
    return {};
  }
  const Bits prec = ctx.lambda();
  if (std::min(a.size(), b.size()) <= kSchoolbookCutoff) {
    return schoolbook(a, b, prec);
  }
  const std::size_t len = a.size() + b.size() - 1;
  const std::size_t n = next_power_of_two(len);
  const auto plan = DftPlan::get(n, ctx);
  Coeffs fa = dft_forward(*plan, padded(a, n, prec));
  const Coeffs fb = dft_forward(*plan, padded(b, n, prec));
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] *= fb[i];
  }
  return truncated(dft_inverse(*plan, fa), len);
}

Coeffs series_inverse(std::span<const Complex> h, std::size_t len, const PrecisionContext& ctx) {
  if (len == 0) {
    return {};
  }
  if (h.empty() || h[0].is_zero()) {
    throw ContractViolation("series_inverse requires a nonzero constant term");
  }
  const Bits prec = ctx.lambda();
  Complex g0 = Complex::one(prec);
  g0 /= h[0];
  Coeffs g{std::move(g0)};
  std::size_t k = 1;
  while (k < len) {
    const std::size_t k2 = std::min(2 * k, len);
    // g <- g·(2 - h·g) mod x^k2
    Coeffs e = truncated(multiply(head(h, k2), g, ctx), k2);
    for (auto& c : e) {
      c = -c;
    }
    e[0] += Complex(2.0, 0.0, prec);
    g = truncated(multiply(g, e, ctx), k2);
    k = k2;
  }
  g.resize(len, Complex::zero(prec));
  return g;
}

Coeffs remainder(std::span<const Complex> f, std::span<const Complex> modulus,
                 const PrecisionContext& ctx, std::span<const Complex> inverse) {
  if (modulus.empty()) {
    throw ContractViolation("remainder modulo the zero polynomial");
  }
  const Bits prec = ctx.lambda();
  const std::size_t n = modulus.size() - 1;
  if (n == 0) {
    return {};
  }
  if (f.size() <= n) {
    return padded(f, f.size(), prec);
  }
  if (n == 1) {
    // x + c: the remainder is F(-c)
    return {eval(f, -modulus[0].at_precision(prec))};
  }
  const std::size_t big = f.size() - 1;
  const std::size_t qlen = big - n + 1;
  Coeffs inv;
  std::span<const Complex> inv_view = inverse;
  if (inverse.size() < qlen) {
    inv = series_inverse(reversed(modulus), qlen, ctx);
    inv_view = inv;
  }
  Coeffs rev_f;
  rev_f.reserve(qlen);
  for (std::size_t i = 0; i < qlen; ++i) {
    rev_f.push_back(f[big - i]);
  }
  const Coeffs rev_q = truncated(multiply(rev_f, head(inv_view, qlen), ctx), qlen);
  const Coeffs quotient = reversed(rev_q);
  // only the low n coefficients of Q·P are needed
  const Coeffs qp = truncated(multiply(head(quotient, n), head(modulus, n), ctx), n);
  Coeffs r;
  r.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex c = f[i].at_precision(prec);
    if (i < qp.size()) {
      c -= qp[i];
    }
    r.push_back(std::move(c));
  }
  return r;
}

SubproductTree build_tree(std::span<const Complex> points, std::size_t leaf_degree,
                          const PrecisionContext& ctx) {
  if (leaf_degree == 0) {
    throw ContractViolation("leaf degree must be positive");
  }
  if (points.empty()) {
    throw ContractViolation("subproduct tree needs at least one point");
  }
  SubproductTree tree;
  tree.leaf_degree = leaf_degree;
  tree.point_count = points.size();
  tree.rho = point_magnitude_bits(points);
  tree.precision = ctx.lambda();

  std::vector<Coeffs> leaves;
  for (std::size_t i = 0; i < points.size(); i += leaf_degree) {
    leaves.push_back(linear_product(points.subspan(i, std::min(leaf_degree, points.size() - i)),
                                    ctx.lambda()));
  }
  tree.levels.push_back(std::move(leaves));
  while (tree.levels.back().size() > 1) {
    const auto& below = tree.levels.back();
    std::vector<Coeffs> next;
    next.reserve((below.size() + 1) / 2);
    for (std::size_t i = 0; i < below.size(); i += 2) {
      if (i + 1 < below.size()) {
        next.push_back(multiply(below[i], below[i + 1], ctx));
      } else {
        next.push_back(below[i]);
      }
    }
    tree.levels.push_back(std::move(next));
  }

  tree.inverses.resize(tree.levels.size());
  for (std::size_t l = 0; l + 1 < tree.levels.size(); ++l) {
    const auto& level = tree.levels[l];
    auto& invs = tree.inverses[l];
    invs.resize(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      const bool has_sibling = (i ^ 1) < level.size();
      const std::size_t degree = level[i].size() - 1;
      if (!has_sibling || degree < 2) {
        continue;
      }
      const std::size_t parent_degree = tree.levels[l + 1][i / 2].size() - 1;
      invs[i] = series_inverse(reversed(level[i]), parent_degree - degree, ctx);
    }
  }
  return tree;
}

std::vector<Coeffs> remainders(std::span<const Complex> f, const SubproductTree& tree,
                               const PrecisionContext& ctx) {
  std::vector<Coeffs> current{remainder(f, tree.root(), ctx)};
  for (std::size_t l = tree.levels.size() - 1; l-- > 0;) {
    const auto& level = tree.levels[l];
    std::vector<Coeffs> next;
    next.reserve(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      const Coeffs& parent = current[i / 2];
      if ((i ^ 1) >= level.size()) {
        next.push_back(parent);
      } else {
        next.push_back(remainder(parent, level[i], ctx, tree.inverses[l][i]));
      }
    }
    current = std::move(next);
  }
  return current;
}

std::vector<Coeffs> eval_many(std::span<const Polynomial> polys, std::span<const Complex> points,
                              const PrecisionContext& ctx) {
  std::vector<Coeffs> out(polys.size());
  if (points.empty() || polys.empty()) {
    return out;
  }
  std::size_t degree = 0;
  for (const auto& p : polys) {
    degree = std::max(degree, p.degree());
  }
  const Bits prec = ctx.lambda();
  std::vector<Polynomial> work;
  work.reserve(polys.size());
  for (const auto& p : polys) {
    work.push_back(p.at_precision(prec));
    out[work.size() - 1].reserve(points.size());
  }
  const std::size_t block = multipoint_block_size(degree, points.size());
  for (std::size_t start = 0; start < points.size(); start += block) {
    const auto chunk = points.subspan(start, std::min(block, points.size() - start));
    const SubproductTree tree = build_tree(chunk, 1, ctx);
    for (std::size_t k = 0; k < work.size(); ++k) {
      auto rems = remainders(work[k].coeffs(), tree, ctx);
      for (auto& r : rems) {
        out[k].push_back(r.empty() ? Complex::zero(prec) : std::move(r[0]));
      }
    }
  }
  return out;
}

Coeffs eval_many(const Polynomial& p, std::span<const Complex> points, const PrecisionContext& ctx) {
  return std::move(eval_many(std::span<const Polynomial>(&p, 1), points, ctx)[0]);
}

}  // namespace rootrefine
