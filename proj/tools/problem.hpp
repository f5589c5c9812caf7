#pragma once

// Problem files and result records for the command-line front end.
//
// Problem file (JSON):
//   {
//     "coeffs": [["1", "0"], ["0x1.8p-1", "-2.5e-3"], ...],   // low to high
//     "discs": [{"cx": "1.5", "cy": "0", "r": "0.2", "isolation": 9,
//                "count": 1, "multiplicity": 1}],
//     "eps_bits": 128,
//     "mode": "refine"
//   }
// Numbers are strings in decimal or hexadecimal-float notation so that they
// parse without going through a double. A coefficient may also be a single
// string for a real value.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rootrefine/numctx.hpp"
#include "rootrefine/poly.hpp"
#include "rootrefine/powersum.hpp"

namespace rootrefine::cli {

/// Malformed problem file; the message names the line or field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Refine, All, Factor, Oracle };

Mode parse_mode(std::string_view text);
std::string_view mode_name(Mode mode);

struct DiscSpec {
  std::string cx;
  std::string cy;
  std::string r;
  double isolation = 0.0;
  std::optional<std::size_t> count;
  std::size_t multiplicity = 1;
};

struct Problem {
  std::vector<std::pair<std::string, std::string>> coeffs;
  std::vector<DiscSpec> discs;
  std::optional<long> eps_bits;
  std::optional<Mode> mode;
};

Problem parse_problem(std::string_view text);

/// Coefficients at the given precision. Throws InputError for degree < 1.
Polynomial build_polynomial(const Problem& problem, Bits precision);
std::vector<IsolatedDisc> build_discs(const Problem& problem, Bits precision);

/// ⌈ℓ·lg 10⌉ significant decimal digits, never fewer than 1.
int output_digits(Bits ell);

}  // namespace rootrefine::cli
