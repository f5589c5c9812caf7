#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "problem.hpp"
#include "rootrefine/driver.hpp"
#include "rootrefine/errors.hpp"
#include "rootrefine/oracle.hpp"

namespace rootrefine::cli {

using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string input;
  std::optional<std::string> mode;
  std::optional<long> eps_bits;
  std::optional<long> precision_bits;
  std::optional<std::string> output;
  bool json = false;
};

struct Setup {
  Mode mode;
  Bits ell;
  PrecisionContext ctx;
  Polynomial p;
  std::vector<IsolatedDisc> discs;
  std::vector<std::size_t> multiplicities;
};

/// Emits records either as JSON lines or as plain text.
class Writer {
 public:
  Writer(std::ostream& os, bool as_json, int digits) : os_(os), json_(as_json), digits_(digits) {}

  void root(std::size_t index, const Complex& z, long err_exp, std::optional<std::size_t> iters,
            std::optional<std::size_t> q, std::optional<double> ms) {
    if (json_) {
      json rec{{"index", index}, {"root", {num(z.real()), num(z.imag())}}, {"err_exp", err_exp}};
      if (iters) rec["iters"] = *iters;
      if (q) rec["q"] = *q;
      if (ms) rec["ms"] = *ms;
      os_ << rec.dump() << '\n';
      return;
    }
    os_ << "root " << index << "  " << num(z.real()) << "  " << num(z.imag()) << "i  err 2^" << err_exp;
    if (iters) os_ << "  iters " << *iters;
    if (q) os_ << "  q " << *q;
    if (ms) os_ << "  " << *ms << " ms";
    os_ << '\n';
  }

  void factor(std::size_t index, const Factor& f, long residual_exp, double ms) {
    if (json_) {
      json coeffs = json::array();
      for (const auto& c : f.poly.coeffs()) coeffs.push_back({num(c.real()), num(c.imag())});
      os_ << json{{"index", index},         {"count", f.root_count}, {"factor", coeffs},
                  {"residual_exp", residual_exp}, {"ms", ms}}
                 .dump()
          << '\n';
      return;
    }
    os_ << "factor " << index << "  count " << f.root_count << "  residual 2^" << residual_exp << "  " << ms
        << " ms\n";
    for (std::size_t i = 0; i < f.poly.coeffs().size(); ++i) {
      os_ << "  x^" << i << "  " << num(f.poly[i].real()) << "  " << num(f.poly[i].imag()) << "i\n";
    }
  }

  void failure(std::optional<std::size_t> index, const std::string& message, double ms) {
    if (json_) {
      json rec{{"error", message}, {"ms", ms}};
      if (index) rec["index"] = *index;
      os_ << rec.dump() << '\n';
      return;
    }
    if (index) os_ << "disc " << *index << "  FAILED: ";
    else os_ << "FAILED: ";
    os_ << message << '\n';
  }

  void summary(const Setup& s, std::size_t ok, std::size_t failed, double ms) {
    if (json_) {
      os_ << json{{"summary",
                   {{"mode", mode_name(s.mode)},
                    {"degree", s.p.degree()},
                    {"ell", s.ell},
                    {"lambda", s.ctx.lambda()},
                    {"ok", ok},
                    {"failed", failed},
                    {"ms", ms}}}}
                 .dump()
          << '\n';
      return;
    }
    os_ << mode_name(s.mode) << ": " << ok << " ok, " << failed << " failed, degree " << s.p.degree()
        << ", lambda " << s.ctx.lambda() << ", " << ms << " ms\n";
  }

 private:
  std::string num(const Real& x) const { return x.to_decimal(digits_); }

  std::ostream& os_;
  bool json_;
  int digits_;
};

long exponent_of(const Real& radius, Bits lambda) {
  const double lg = radius.log2_abs();
  return std::isfinite(lg) ? static_cast<long>(std::ceil(lg)) : -lambda;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot read input file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Bits context_tau(const Polynomial& p, const std::vector<IsolatedDisc>& discs) {
  Bits tau = p.tau();
  for (const auto& d : discs) {
    tau = std::max(tau, shifted_tau_bound(p, d.center, d.contour_radius()));
  }
  return tau;
}

Setup prepare(const Options& opt) {
  const Problem problem = parse_problem(read_file(opt.input));
  const Mode mode = opt.mode ? parse_mode(*opt.mode)
                             : problem.mode ? *problem.mode
                                            : throw InputError("mode: not given in the file or on the command line");
  const long ell = opt.eps_bits ? *opt.eps_bits
                                : problem.eps_bits ? *problem.eps_bits
                                                   : throw InputError("eps_bits: not given in the file or on the command line");
  if (ell < 1) {
    throw InputError("eps_bits: must be at least 1");
  }
  if (mode != Mode::Oracle && problem.discs.empty()) {
    throw InputError("discs: no discs");
  }

  const Polynomial rough = build_polynomial(problem, 64);
  const auto rough_discs = build_discs(problem, 64);
  const std::size_t d = rough.degree();
  const Bits tau = context_tau(rough, rough_discs);
  Bits lambda = 0;
  if (opt.precision_bits) {
    if (*opt.precision_bits < 16) {
      throw InputError("--precision-bits: must be at least 16");
    }
    lambda = *opt.precision_bits;
  } else if (mode == Mode::Oracle) {
    lambda = 2 * ell + 16;
  } else {
    lambda = PrecisionContext::for_target(ell, tau, static_cast<long>(d)).lambda();
  }

  Setup s{mode, ell, PrecisionContext(lambda, ell, tau), build_polynomial(problem, lambda),
          build_discs(problem, lambda), {}};
  for (const auto& spec : problem.discs) s.multiplicities.push_back(spec.multiplicity);
  for (std::size_t i = 0; i < s.multiplicities.size(); ++i) {
    if (s.multiplicities[i] > d) {
      throw InputError("discs[" + std::to_string(i) + "].multiplicity: exceeds the degree " + std::to_string(d));
    }
  }
  return s;
}

int execute(const Setup& s, Writer& w) {
  const auto t0 = std::chrono::steady_clock::now();
  const Real eps = Real::pow2(-s.ell, 64);
  std::size_t ok = 0;
  std::size_t failed = 0;

  auto report = [&](std::size_t i, const DiscOutcome& o) {
    if (o.ok()) {
      ++ok;
      w.root(i, o.result->root, exponent_of(o.result->error_radius, s.ctx.lambda()), o.result->iterations,
             o.q_used, o.milliseconds);
    } else {
      ++failed;
      w.failure(i, o.error, o.milliseconds);
    }
  };

  switch (s.mode) {
    case Mode::Refine:
      for (std::size_t i = 0; i < s.discs.size(); ++i) {
        report(i, refine_one(s.p, s.discs[i], eps, s.multiplicities[i], s.ctx));
      }
      break;
    case Mode::All: {
      AllRootsPlan plan{s.discs, eps, s.multiplicities};
      try {
        plan.validate(s.p.degree());
      } catch (const ContractViolation& e) {
        throw InputError(std::string("discs: ") + e.what());
      }
      const auto outcomes = refine_all(s.p, plan, s.ctx);
      for (std::size_t i = 0; i < outcomes.size(); ++i) report(i, outcomes[i]);
      break;
    }
    case Mode::Factor:
      for (std::size_t i = 0; i < s.discs.size(); ++i) {
        const auto ti = std::chrono::steady_clock::now();
        try {
          const Factor f = extract_factor(s.p, s.discs[i], s.ctx);
          ++ok;
          w.factor(i, f, exponent_of(f.residual, s.ctx.lambda()), since(ti));
        } catch (const Error& e) {
          ++failed;
          w.failure(i, e.what(), since(ti));
        }
      }
      break;
    case Mode::Oracle:
      try {
        auto roots = oracle_roots(s.p, s.ctx.lambda());
        std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
          if (a.real() != b.real()) return a.real() < b.real();
          return a.imag() < b.imag();
        });
        for (std::size_t i = 0; i < roots.size(); ++i) {
          w.root(i, roots[i], -s.ctx.lambda() / 2, std::nullopt, std::nullopt, std::nullopt);
        }
        ok = roots.size();
      } catch (const Error& e) {
        ++failed;
        w.failure(std::nullopt, e.what(), since(t0));
      }
      break;
  }
  w.summary(s, ok, failed, since(t0));
  return failed == 0 ? kSuccess : kPartialFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified refinement of polynomial roots from isolated discs"};
  Options opt;
  app.add_option("--input", opt.input, "JSON problem file")->required();
  app.add_option("--mode", opt.mode, "refine | all | factor | oracle (overrides the file)");
  app.add_option("--eps-bits", opt.eps_bits, "target error 2^-n (overrides the file)");
  app.add_option("--precision-bits", opt.precision_bits, "working precision override");
  app.add_option("--output", opt.output, "write the result document here instead of stdout");
  app.add_flag("--json", opt.json, "JSON-lines output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    const Setup s = prepare(opt);
    std::ofstream file;
    if (opt.output) {
      file.open(*opt.output);
      if (!file) {
        throw InputError("cannot write output file '" + *opt.output + "'");
      }
    }
    Writer w(opt.output ? file : out, opt.json, output_digits(s.ell));
    return execute(s, w);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace rootrefine::cli
