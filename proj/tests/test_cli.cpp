#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "problem.hpp"
#include "rootrefine/numctx.hpp"
#include "support/oracles.hpp"

using namespace rootrefine;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;

  std::vector<json> records() const {
    std::vector<json> r;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) r.push_back(json::parse(line));
    }
    return r;
  }
};

fs::path scratch(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "rootrefine_cli_test";
  fs::create_directories(dir);
  const fs::path file = dir / name;
  std::ofstream(file) << body;
  return file;
}

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rootrefine-cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Complex root_of(const json& rec, Bits prec) {
  return Complex(Real::parse(rec["root"][0].get<std::string>(), prec),
                 Real::parse(rec["root"][1].get<std::string>(), prec));
}

}  // namespace

TEST_CASE("square root of two") {
  const auto file = scratch("sqrt2.json", R"({
    "coeffs": [["-2", "0"], ["0", "0"], ["1", "0"]],
    "discs": [{"cx": "1.5", "cy": "0", "r": "0.2", "isolation": 9}],
    "eps_bits": 128,
    "mode": "refine"
  })");
  const Run r = invoke({"--input", file.string(), "--json"});
  REQUIRE(r.code == 0);
  const auto recs = r.records();
  REQUIRE(recs.size() == 2);
  CHECK(recs[0]["index"] == 0);
  CHECK(recs[0]["err_exp"].get<long>() <= -128);
  CHECK(recs[0]["iters"].get<long>() >= 1);
  CHECK(recs[0]["q"].get<long>() >= 4);
  CHECK(recs[0].contains("ms"));
  CHECK(recs[1]["summary"]["ok"] == 1);
  CHECK(recs[1]["summary"]["failed"] == 0);

  const std::string re = recs[0]["root"][0];
  CHECK(re.rfind("1.41421356", 0) == 0);
  const Real sqrt2 = sqrt(Real(2.0, 600));
  // certificate plus half a unit in the 39th significant digit
  const double slack = std::ldexp(1.0, -128) + 0.5e-38;
  CHECK(abs(Real::parse(re, 600) - sqrt2).to_double() <= slack);

  // printed digits survive a re-read at the working precision
  const long lambda = recs[1]["summary"]["lambda"];
  const int digits = cli::output_digits(128);
  CHECK(digits == 39);
  CHECK(Real::parse(re, lambda).to_decimal(digits) == re);
}

TEST_CASE("oracle mode") {
  const auto file = scratch("five.json", R"({
    "coeffs": ["-120", "274", "-225", "85", "-15", "1"],
    "eps_bits": 100,
    "mode": "oracle"
  })");
  const Run r = invoke({"--input", file.string(), "--json"});
  REQUIRE(r.code == 0);
  const auto recs = r.records();
  REQUIRE(recs.size() == 6);
  for (int j = 0; j < 5; ++j) {
    CHECK(testing::lg_dist(root_of(recs[static_cast<std::size_t>(j)], 400), Complex(j + 1.0, 0.0, 400)) <= -100);
  }
}

TEST_CASE("input errors") {
  const auto empty = scratch("empty.json", R"({"coeffs": ["-1", "1"], "discs": [], "eps_bits": 64, "mode": "all"})");
  Run r = invoke({"--input", empty.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("no discs") != std::string::npos);

  const auto broken = scratch("broken.json", "{\n  \"coeffs\": [\"1\", \"2\"],\n  \"discs\": [,]\n}");
  r = invoke({"--input", broken.string(), "--mode", "refine", "--eps-bits", "10"});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 3") != std::string::npos);

  const auto numeric = scratch("numeric.json", R"({"coeffs": [["1", "0"], [2.5, "0"]], "mode": "oracle", "eps_bits": 10})");
  r = invoke({"--input", numeric.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("coeffs[1][0]") != std::string::npos);

  const auto constant = scratch("constant.json", R"({"coeffs": ["3", "0"], "mode": "oracle", "eps_bits": 10})");
  r = invoke({"--input", constant.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("degree") != std::string::npos);

  const auto radius = scratch("radius.json",
                              R"({"coeffs": ["-1", "1"], "discs": [{"cx": "1", "r": "-1", "isolation": 4}],
                                  "eps_bits": 10, "mode": "refine"})");
  r = invoke({"--input", radius.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("discs[0].r") != std::string::npos);

  const auto nomode = scratch("nomode.json", R"({"coeffs": ["-1", "1"], "eps_bits": 10})");
  r = invoke({"--input", nomode.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("mode") != std::string::npos);

  r = invoke({"--input", nomode.string(), "--mode", "sideways"});
  CHECK(r.code == 1);

  r = invoke({"--input", (fs::temp_directory_path() / "rootrefine_cli_test" / "absent.json").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("cannot read") != std::string::npos);

  r = invoke({});
  CHECK(r.code == 1);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("per-disc failures are itemized") {
  // roots 1, 2, 3, 4; the disc around 2.5 holds none
  const auto file = scratch("partial.json", R"({
    "coeffs": ["24", "-50", "35", "-10", "1"],
    "discs": [{"cx": "1.05", "r": "0.3", "isolation": 3},
              {"cx": "2.5", "r": "0.1", "isolation": 3},
              {"cx": "4.05", "cy": "-0.02", "r": "0.3", "isolation": 3}],
    "eps_bits": 96
  })");
  for (const char* mode : {"refine", "all"}) {
    const Run r = invoke({"--input", file.string(), "--mode", mode, "--json"});
    CHECK(r.code == 2);
    const auto recs = r.records();
    REQUIRE(recs.size() == 4);
    CHECK(recs[0].contains("root"));
    CHECK(recs[1]["index"] == 1);
    CHECK(recs[1].contains("error"));
    CHECK(recs[2].contains("root"));
    CHECK(recs[3]["summary"]["failed"] == 1);
    CHECK(testing::lg_dist(root_of(recs[2], 300), Complex(4.0, 0.0, 300)) <= -90);
  }

  const auto overlap = scratch("overlap.json", R"({
    "coeffs": ["2", "-3", "1"],
    "discs": [{"cx": "1", "r": "0.6", "isolation": 1.5}, {"cx": "2", "r": "0.6", "isolation": 1.5}],
    "eps_bits": 32, "mode": "all"
  })");
  const Run r = invoke({"--input", overlap.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("overlap") != std::string::npos);
}

TEST_CASE("factor mode and output file") {
  // (x - 1/2)(x - 1/4)(x - 3)(x + 4), hex-float for one coefficient
  const auto file = scratch("factor.json", R"({
    "coeffs": ["-1.5", "9.125", "-12.625", "0x1p-2", "1"],
    "discs": [{"cx": "0.375", "r": "0.2", "isolation": 6, "count": 2}],
    "eps_bits": 120,
    "mode": "factor"
  })");
  const fs::path out = fs::temp_directory_path() / "rootrefine_cli_test" / "factor.out";
  const Run r = invoke({"--input", file.string(), "--json", "--output", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::string line;
  REQUIRE(std::getline(in, line));
  const json rec = json::parse(line);
  CHECK(rec["count"] == 2);
  REQUIRE(rec["factor"].size() == 3);
  const double expect[] = {0.125, -0.75, 1.0};
  for (std::size_t i = 0; i < 3; ++i) {
    const Real re = Real::parse(rec["factor"][i][0].get<std::string>(), 300);
    CHECK(abs(re - Real(expect[i], 300)).log2_abs() <= -120);
  }
  CHECK(rec["residual_exp"].get<long>() <= -60);

  // the text format carries the same content
  const Run text = invoke({"--input", file.string()});
  CHECK(text.code == 0);
  CHECK(text.out.find("factor 0  count 2") != std::string::npos);
}

TEST_CASE("flag overrides and a double root") {
  // (x - 1)²(x - 3)
  const auto file = scratch("double.json", R"({
    "coeffs": ["-3", "7", "-5", "1"],
    "discs": [{"cx": "1.05", "cy": "0.02", "r": "0.4", "isolation": 4, "multiplicity": 2}],
    "eps_bits": 8, "mode": "all"
  })");
  const Run r = invoke({"--input", file.string(), "--mode", "refine", "--eps-bits", "128", "--json"});
  REQUIRE(r.code == 0);
  const auto recs = r.records();
  CHECK(recs.back()["summary"]["mode"] == "refine");
  CHECK(recs.back()["summary"]["ell"] == 128);
  CHECK(testing::lg_dist(root_of(recs[0], 400), Complex(1.0, 0.0, 400)) <= -127);

  const Run pinned = invoke({"--input", file.string(), "--precision-bits", "700", "--json"});
  CHECK(pinned.records().back()["summary"]["lambda"] == 700);
}
