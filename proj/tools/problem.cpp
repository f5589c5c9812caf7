#include "problem.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "rootrefine/errors.hpp"

namespace rootrefine::cli {

using nlohmann::json;

namespace {

std::string line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string number_string(const json& v, const std::string& field) {
  if (!v.is_string()) {
    throw InputError(field + ": expected a number written as a string");
  }
  const std::string s = v.get<std::string>();
  try {
    (void)Real::parse(s, 64);
  } catch (const ContractViolation&) {
    throw InputError(field + ": malformed number '" + s + "'");
  }
  return s;
}

std::size_t positive_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InputError(field + ": expected a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

double isolation_value(const json& v, const std::string& field) {
  double iso = 0.0;
  if (v.is_number()) {
    iso = v.get<double>();
  } else if (v.is_string()) {
    iso = Real::parse(number_string(v, field), 64).to_double();
  } else {
    throw InputError(field + ": expected a number");
  }
  if (!(iso > 1.0) || !std::isfinite(iso)) {
    throw InputError(field + ": isolation ratio must exceed 1");
  }
  return iso;
}

Real parse_at(const std::string& s, Bits precision) { return Real::parse(s, precision); }

}  // namespace

Mode parse_mode(std::string_view text) {
  if (text == "refine") return Mode::Refine;
  if (text == "all") return Mode::All;
  if (text == "factor") return Mode::Factor;
  if (text == "oracle") return Mode::Oracle;
  throw InputError("mode: expected refine, all, factor or oracle, got '" + std::string(text) + "'");
}

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::Refine:
      return "refine";
    case Mode::All:
      return "all";
    case Mode::Factor:
      return "factor";
    case Mode::Oracle:
      return "oracle";
  }
  return "?";
}

Problem parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON at " + line_and_column(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!doc.is_object()) {
    throw InputError("top level: expected a JSON object");
  }

  Problem out;
  if (!doc.contains("coeffs") || !doc["coeffs"].is_array()) {
    throw InputError("coeffs: missing or not an array");
  }
  const json& coeffs = doc["coeffs"];
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string field = "coeffs[" + std::to_string(i) + "]";
    const json& c = coeffs[i];
    if (c.is_string()) {
      out.coeffs.emplace_back(number_string(c, field), "0");
    } else if (c.is_array() && c.size() == 2) {
      out.coeffs.emplace_back(number_string(c[0], field + "[0]"), number_string(c[1], field + "[1]"));
    } else {
      throw InputError(field + ": expected [re, im] or a single string");
    }
  }

  if (doc.contains("discs")) {
    if (!doc["discs"].is_array()) {
      throw InputError("discs: expected an array");
    }
    const json& discs = doc["discs"];
    for (std::size_t i = 0; i < discs.size(); ++i) {
      const std::string field = "discs[" + std::to_string(i) + "]";
      const json& d = discs[i];
      if (!d.is_object()) {
        throw InputError(field + ": expected an object");
      }
      DiscSpec spec;
      for (const char* key : {"cx", "r", "isolation"}) {
        if (!d.contains(key)) {
          throw InputError(field + "." + key + ": missing");
        }
      }
      spec.cx = number_string(d["cx"], field + ".cx");
      spec.cy = d.contains("cy") ? number_string(d["cy"], field + ".cy") : "0";
      spec.r = number_string(d["r"], field + ".r");
      if (!(Real::parse(spec.r, 64).sign() > 0)) {
        throw InputError(field + ".r: radius must be positive");
      }
      spec.isolation = isolation_value(d["isolation"], field + ".isolation");
      if (d.contains("count")) spec.count = positive_integer(d["count"], field + ".count");
      if (d.contains("multiplicity")) {
        spec.multiplicity = positive_integer(d["multiplicity"], field + ".multiplicity");
      }
      out.discs.push_back(std::move(spec));
    }
  }

  if (doc.contains("eps_bits")) {
    out.eps_bits = static_cast<long>(positive_integer(doc["eps_bits"], "eps_bits"));
  }
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) {
      throw InputError("mode: expected a string");
    }
    out.mode = parse_mode(doc["mode"].get<std::string>());
  }
  return out;
}

Polynomial build_polynomial(const Problem& problem, Bits precision) {
  Coeffs c;
  c.reserve(problem.coeffs.size());
  for (const auto& [re, im] : problem.coeffs) {
    c.emplace_back(parse_at(re, precision), parse_at(im, precision));
  }
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.size() < 2) {
    throw InputError("coeffs: degree must be at least 1");
  }
  return Polynomial(std::move(c), precision);
}

std::vector<IsolatedDisc> build_discs(const Problem& problem, Bits precision) {
  std::vector<IsolatedDisc> out;
  for (const auto& spec : problem.discs) {
    IsolatedDisc d;
    d.center = Complex(parse_at(spec.cx, precision), parse_at(spec.cy, precision));
    d.radius = parse_at(spec.r, precision);
    d.isolation = spec.isolation;
    d.claimed_root_count = spec.count;
    out.push_back(std::move(d));
  }
  return out;
}

int output_digits(Bits ell) {
  return std::max(1, static_cast<int>(std::ceil(static_cast<double>(ell) * std::log10(2.0))));
}

}  // namespace rootrefine::cli
