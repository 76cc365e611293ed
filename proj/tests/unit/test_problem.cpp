#include <doctest.h>

#include <filesystem>
#include <random>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "singcert/problem.hpp"

using namespace singcert;

namespace {

const char* kExample =
    "# comment\n"
    "vars: x1 x2\n"
    "f1: x1 - x2 + x1^2\n"
    "f2: x1 - x2 + x2^2\n"
    "point: 0 0\n"
    "box: [-0.03,0.05] [-0.02,0.02]\n"
    "opts: tol=1e-8 max_depth=16 eps_radius=0.04 method=improved seed=0\n";

ParseError parse_error_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "");
}

}  // namespace

TEST_SUITE("problem") {
  TEST_CASE("the documented example parses") {
    auto p = parse_problem(kExample);
    CHECK(p.vars == std::vector<std::string>{"x1", "x2"});
    CHECK(p.names == std::vector<std::string>{"f1", "f2"});
    REQUIRE(p.polys.size() == 2);
    CHECK(p.polys[0] == fixture::poly("x1^2 + x1 - x2", fixture::kX12));
    REQUIRE(p.point.has_value());
    CHECK(*p.point == Point{0, 0});
    REQUIRE(p.box.has_value());
    REQUIRE(p.box->size() == 2);
    CHECK((*p.box)[0] == Interval(-0.03, 0.05));
    CHECK((*p.box)[1] == Interval(-0.02, 0.02));
    CHECK(p.opts.tol == 1e-8);
    CHECK(p.opts.max_depth == 16);
    CHECK(p.opts.eps_radius == 0.04);
    CHECK(p.opts.method == std::string("improved"));
    CHECK(p.opts.seed == 0u);
    CHECK(p.system().size() == 2);
  }

  TEST_CASE("point, box and opts are optional") {
    auto p = parse_problem("vars: x y\nf: x^2 - y^2\n");
    CHECK_FALSE(p.point.has_value());
    CHECK_FALSE(p.box.has_value());
    CHECK(p.opts.empty());
  }

  TEST_CASE("a problem without polynomials is rejected") {
    CHECK_THROWS_AS(parse_problem("vars: x y\npoint: 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_problem(""), ParseError);
  }

  TEST_CASE("parse errors carry line and column") {
    auto e = parse_error_of("vars: x1 x2\nf1: x1 + x3\n");
    CHECK(e.line() == 2);
    CHECK(e.column() >= 9);
    CHECK(std::string(e.what()).find("x3") != std::string::npos);

    auto m = parse_error_of("vars: x y\n\nf: 2 x\n");
    CHECK(m.line() == 3);

    CHECK(parse_error_of("f: x\nvars: x\n").line() == 1);
    CHECK(parse_error_of("vars: x\nf: x^-1\n").line() == 2);
    CHECK(parse_error_of("vars: x\nf: (x + 1\n").line() == 2);
    CHECK(parse_error_of("vars: x y\nf: x\npoint: 0\n").line() == 3);
    CHECK(parse_error_of("vars: x y\nf: x\nbox: [1,0] [0,1]\n").line() == 3);
    CHECK(parse_error_of("vars: x\nf: x\nopts: colour=red\n").line() == 3);
    CHECK(parse_error_of("vars: x\nf: x\nno colon here\n").line() == 3);
  }

  TEST_CASE("implicit multiplication and undeclared variables are errors") {
    CHECK_THROWS_AS(parse_polynomial("2x", {"x"}), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x y", {"x", "y"}), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x*z", {"x", "y"}), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x^1.5", {"x"}), ParseError);
  }

  TEST_CASE("expressions expand") {
    std::vector<std::string> v{"x", "y"};
    CHECK(parse_polynomial("(x + y)^2", v) == fixture::poly("x^2 + 2*x*y + y^2", v));
    CHECK(parse_polynomial("-(x - 1)*3", v) == fixture::poly("3 - 3*x", v));
    CHECK(parse_polynomial("1.5e-1*y", v) == fixture::poly("0.15*y", v));
    CHECK(parse_polynomial("x^0", v) == Polynomial::constant(2, 1.0));
  }

  TEST_CASE("print then parse is the identity") {
    CHECK(parse_problem(print_problem(parse_problem(kExample))) == parse_problem(kExample));
    std::mt19937_64 rng(89);
    for (int k = 0; k < 30; ++k) {
      ProblemFile p;
      p.vars = {"a", "b", "c"};
      p.names = {"g1", "g2"};
      p.polys = {oracle::random_int_poly(rng, 3, 4, 5) * 0.1, oracle::random_int_poly(rng, 3, 3, 4) * (1.0 / 3)};
      p.point = Point{0.1, -1.0 / 7, 2.5e-9};
      p.box = box_from_bounds({{-1, 1}, {0.125, 0.25}, {-1e-3, 1e-3}});
      if (k % 2) {
        p.opts.tol = 1.0 / 3;
        p.opts.method = "macaulay";
        p.opts.seed = 12345678901234ULL;
      }
      CHECK(parse_problem(print_problem(p)) == p);
    }
  }

  TEST_CASE("every corpus file loads") {
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(SINGCERT_PROBLEMS_DIR)) {
      if (entry.path().extension() != ".sys") continue;
      CAPTURE(entry.path().string());
      auto p = load_problem(entry.path().string());
      CHECK(!p.polys.empty());
      CHECK(p.point.has_value());
      ++count;
    }
    CHECK(count == 8);
    auto narrow = load_problem(fixture::problem_path("cusp_narrow_box.sys"));
    CHECK(narrow.opts.tol == 0.04);
    CHECK(narrow.system().size() == 2);
    CHECK_THROWS_AS(load_problem(fixture::problem_path("no_such_problem.sys")), InvalidArgument);
  }
}
