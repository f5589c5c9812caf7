// Python bindings. Numbers cross the boundary as strings (exact decimal or
// hexadecimal-float input, ⌈ℓ·lg 10⌉-digit decimal output) or as Python
// ints, floats and complex values, which are converted exactly.

#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "rootrefine/driver.hpp"
#include "rootrefine/errors.hpp"
#include "rootrefine/oracle.hpp"
#include "rootrefine/powersum.hpp"

namespace py = pybind11;
using namespace rootrefine;

namespace {

int digits_for(Bits ell) { return std::max(1, static_cast<int>(std::ceil(static_cast<double>(ell) * std::log10(2.0)))); }

Real to_real(const py::handle& h, Bits prec) {
  if (py::isinstance<py::str>(h)) {
    return Real::parse(h.cast<std::string>(), prec);
  }
  if (py::isinstance<py::int_>(h)) {
    return Real::parse(py::str(h).cast<std::string>(), prec);
  }
  if (py::isinstance<py::float_>(h)) {
    return Real(h.cast<double>(), prec);
  }
  throw py::type_error("expected str, int or float");
}

Complex to_complex(const py::handle& h, Bits prec) {
  if (py::isinstance<py::tuple>(h) || py::isinstance<py::list>(h)) {
    const auto seq = h.cast<py::sequence>();
    if (seq.size() != 2) throw py::value_error("complex value as a sequence needs (re, im)");
    return Complex(to_real(seq[0], prec), to_real(seq[1], prec));
  }
  if (PyComplex_Check(h.ptr())) {
    const auto z = h.cast<std::complex<double>>();
    return Complex(z.real(), z.imag(), prec);
  }
  return Complex(to_real(h, prec), Real::zero(prec));
}

Polynomial to_poly(const py::sequence& coeffs, Bits prec) {
  Coeffs c;
  for (const auto& h : coeffs) c.push_back(to_complex(h, prec));
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.size() < 2) throw py::value_error("polynomial degree must be at least 1");
  return Polynomial(std::move(c), prec);
}

IsolatedDisc to_disc(const py::handle& center, const py::handle& radius, double isolation, Bits prec,
                     std::optional<std::size_t> count = std::nullopt) {
  IsolatedDisc d;
  d.center = to_complex(center, prec);
  d.radius = to_real(radius, prec);
  d.isolation = isolation;
  d.claimed_root_count = count;
  return d;
}

py::tuple pair(const Complex& z, int digits) {
  return py::make_tuple(z.real().to_decimal(digits), z.imag().to_decimal(digits));
}

long exponent_of(const Real& r, Bits lambda) {
  const double lg = r.log2_abs();
  return std::isfinite(lg) ? static_cast<long>(std::ceil(lg)) : -lambda;
}

Bits context_tau(const Polynomial& p, const std::vector<IsolatedDisc>& discs) {
  Bits tau = p.tau();
  for (const auto& d : discs) tau = std::max(tau, shifted_tau_bound(p, d.center, d.contour_radius()));
  return tau;
}

// Parses at 64 bits to size the context, then again at the working precision.
struct Prepared {
  PrecisionContext ctx;
  Polynomial p;
  std::vector<IsolatedDisc> discs;
};

struct DiscArgs {
  py::object center;
  py::object radius;
  double isolation;
  std::optional<std::size_t> count;
};

Prepared prepare(const py::sequence& coeffs, const std::vector<DiscArgs>& discs, long eps_bits,
                 std::optional<long> precision_bits) {
  if (eps_bits < 1) throw py::value_error("eps_bits must be at least 1");
  const Polynomial rough = to_poly(coeffs, 64);
  std::vector<IsolatedDisc> rd;
  for (const auto& a : discs) rd.push_back(to_disc(a.center, a.radius, a.isolation, 64, a.count));
  const Bits tau = context_tau(rough, rd);
  const Bits lambda = precision_bits ? *precision_bits
                                     : PrecisionContext::for_target(eps_bits, tau, static_cast<long>(rough.degree())).lambda();
  Prepared out{PrecisionContext(lambda, eps_bits, tau), to_poly(coeffs, lambda), {}};
  for (const auto& a : discs) out.discs.push_back(to_disc(a.center, a.radius, a.isolation, lambda, a.count));
  return out;
}

py::dict outcome_dict(const DiscOutcome& o, const PrecisionContext& ctx) {
  py::dict d;
  if (!o.ok()) {
    d["error"] = o.error;
  } else {
    d["root"] = pair(o.result->root, digits_for(ctx.ell()));
    d["err_exp"] = exponent_of(o.result->error_radius, ctx.lambda());
    d["iterations"] = o.result->iterations;
  }
  d["q"] = o.q_used;
  d["ms"] = o.milliseconds;
  return d;
}

py::dict refine(const py::sequence& coeffs, const py::object& center, const py::object& radius, double isolation,
                long eps_bits, std::size_t multiplicity, std::optional<long> precision_bits) {
  const Prepared pr = prepare(coeffs, {{center, radius, isolation, std::nullopt}}, eps_bits, precision_bits);
  DiscOutcome o;
  {
    py::gil_scoped_release release;
    o = refine_one(pr.p, pr.discs[0], Real::pow2(-eps_bits, 64), multiplicity, pr.ctx);
  }
  py::dict d = outcome_dict(o, pr.ctx);
  d["lambda"] = pr.ctx.lambda();
  return d;
}

py::list refine_all_py(const py::sequence& coeffs, const py::sequence& discs, long eps_bits,
                       std::optional<long> precision_bits) {
  std::vector<DiscArgs> args;
  std::vector<std::size_t> mult;
  for (const auto& h : discs) {
    const auto d = h.cast<py::dict>();
    args.push_back({d["center"], d["radius"], d["isolation"].cast<double>(),
                    d.contains("count") ? std::optional<std::size_t>(d["count"].cast<std::size_t>()) : std::nullopt});
    mult.push_back(d.contains("multiplicity") ? d["multiplicity"].cast<std::size_t>() : 1);
  }
  const Prepared pr = prepare(coeffs, args, eps_bits, precision_bits);
  AllRootsPlan plan{pr.discs, Real::pow2(-eps_bits, 64), mult};
  std::vector<DiscOutcome> out;
  {
    py::gil_scoped_release release;
    out = refine_all(pr.p, plan, pr.ctx);
  }
  py::list res;
  for (const auto& o : out) res.append(outcome_dict(o, pr.ctx));
  return res;
}

py::dict factor_py(const py::sequence& coeffs, const py::object& center, const py::object& radius, double isolation,
                   long eps_bits, std::optional<std::size_t> count, std::optional<long> precision_bits) {
  const Prepared pr = prepare(coeffs, {{center, radius, isolation, count}}, eps_bits, precision_bits);
  const Factor f = extract_factor(pr.p, pr.discs[0], pr.ctx);
  py::list c;
  for (const auto& x : f.poly.coeffs()) c.append(pair(x, digits_for(eps_bits)));
  py::dict d;
  d["coeffs"] = c;
  d["count"] = f.root_count;
  d["residual_exp"] = exponent_of(f.residual, pr.ctx.lambda());
  return d;
}

py::list oracle_py(const py::sequence& coeffs, long precision_bits) {
  const Polynomial p = to_poly(coeffs, precision_bits);
  std::vector<Complex> roots;
  {
    py::gil_scoped_release release;
    roots = oracle_roots(p, precision_bits);
  }
  py::list out;
  for (const auto& z : roots) out.append(pair(z, digits_for(precision_bits / 2)));
  return out;
}

py::list power_sums_py(const py::sequence& coeffs, const py::object& center, const py::object& radius,
                       double isolation, std::size_t kmax, double delta, long precision_bits) {
  const auto ctx = PrecisionContext::with_lambda(precision_bits);
  const Polynomial p = to_poly(coeffs, precision_bits);
  const auto est = power_sums_in_disc(p, to_disc(center, radius, isolation, precision_bits), kmax, delta, ctx);
  py::list out;
  const int digits = digits_for(precision_bits);
  for (const auto& e : est) {
    py::dict d;
    d["k"] = e.k;
    d["value"] = pair(e.value, digits);
    d["error_radius"] = e.error_radius.to_double();
    d["q"] = e.q_used;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_rootrefine, m) {
  m.doc() = "Certified refinement of polynomial roots from isolated discs";

  auto base = py::register_exception<Error>(m, "RootRefineError", PyExc_RuntimeError);
  py::register_exception<ContractViolation>(m, "ContractViolation", base.ptr());
  py::register_exception<ContourProximityError>(m, "ContourProximityError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<InsufficientPrecision>(m, "InsufficientPrecision", base.ptr());

  m.def("working_precision_for", &working_precision_for, py::arg("ell"), py::arg("tau"), py::arg("degree"));
  m.def("refine", &refine, py::arg("coeffs"), py::arg("center"), py::arg("radius"), py::arg("isolation"),
        py::arg("eps_bits"), py::arg("multiplicity") = 1, py::arg("precision_bits") = py::none(),
        "Boost and Newton-refine the root in one isolated disc.");
  m.def("refine_all", &refine_all_py, py::arg("coeffs"), py::arg("discs"), py::arg("eps_bits"),
        py::arg("precision_bits") = py::none(),
        "Refine the roots in several discs with batched multipoint evaluation.");
  m.def("extract_factor", &factor_py, py::arg("coeffs"), py::arg("center"), py::arg("radius"), py::arg("isolation"),
        py::arg("eps_bits"), py::arg("count") = py::none(), py::arg("precision_bits") = py::none(),
        "Monic factor whose roots are the roots inside the disc.");
  m.def("oracle_roots", &oracle_py, py::arg("coeffs"), py::arg("precision_bits"),
        "All roots by an independent Aberth iteration.");
  m.def("power_sums", &power_sums_py, py::arg("coeffs"), py::arg("center"), py::arg("radius"), py::arg("isolation"),
        py::arg("kmax"), py::arg("delta"), py::arg("precision_bits") = 256,
        "Certified estimates of the power sums s_0..s_kmax of the roots inside the disc.");
}
