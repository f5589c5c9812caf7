#include "rootrefine/dft.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "rootrefine/errors.hpp"

namespace rootrefine {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

DftPlan::DftPlan(std::size_t q, const PrecisionContext& ctx) : precision_(ctx.lambda()) {
  if (q < 2 || !is_power_of_two(q)) {
    throw ContractViolation("DFT size must be a power of two >= 2");
  }
  roots_.reserve(q);
  const auto n = static_cast<long>(q);
  // First quadrant directly, the rest by exact rotation by i.
  const long quarter = n / 4;
  if (quarter == 0) {
    roots_.push_back(Complex::one(precision_));
    roots_.emplace_back(-1.0, 0.0, precision_);
    return;
  }
  for (long j = 0; j < quarter; ++j) {
    roots_.push_back(root_of_unity(n, j, ctx));
  }
  for (long j = quarter; j < n; ++j) {
    const Complex& prev = roots_[static_cast<std::size_t>(j - quarter)];
    roots_.emplace_back(-prev.imag(), prev.real());
  }
}

std::shared_ptr<const DftPlan> DftPlan::get(std::size_t q, const PrecisionContext& ctx) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, Bits>, std::shared_ptr<const DftPlan>> cache;
  const auto key = std::make_pair(q, ctx.lambda());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) {
      return it->second;
    }
  }
  auto plan = std::make_shared<const DftPlan>(q, ctx);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(plan)).first->second;
}

namespace {

void fft_in_place(const DftPlan& plan, Coeffs& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) {
      j ^= bit;
    }
    j ^= bit;
    if (i < j) {
      std::swap(a[i], a[j]);
    }
  }
  const Bits prec = plan.precision();
  Complex t = Complex::zero(prec);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex& u = a[i + k];
        Complex& v = a[i + k + half];
        if (k == 0) {
          t = v;
        } else {
          t = v;
          t *= plan.root(k * step);
        }
        v = u;
        v -= t;
        u += t;
      }
    }
  }
}

}  // namespace

Coeffs dft_forward(const DftPlan& plan, std::span<const Complex> v) {
  if (v.size() != plan.size()) {
    throw ContractViolation("DFT input length does not match the plan size");
  }
  Coeffs a;
  a.reserve(v.size());
  for (const auto& x : v) {
    a.push_back(x.at_precision(plan.precision()));
  }
  fft_in_place(plan, a);
  return a;
}

Coeffs dft_inverse(const DftPlan& plan, std::span<const Complex> v) {
  Coeffs f = dft_forward(plan, v);
  const std::size_t n = f.size();
  Coeffs out;
  out.reserve(n);
  long shift = 0;
  while ((std::size_t{1} << shift) < n) {
    ++shift;
  }
  for (std::size_t h = 0; h < n; ++h) {
    Complex c = std::move(f[(n - h) % n]);
    c.scale2(-shift);
    out.push_back(std::move(c));
  }
  return out;
}

Coeffs eval_at_roots(const FoldedPolynomial& fp, const DftPlan& plan) {
  if (fp.q != plan.size()) {
    throw ContractViolation("folded polynomial length does not match the plan size");
  }
  return dft_forward(plan, fp.coeffs);
}

}  // namespace rootrefine
