#pragma once

// Plain-text problem files.
//
//   # comment
//   vars: x1 x2
//   f1: x1 - x2 + x1^2
//   f2: x1 - x2 + x2^2
//   point: 0 0
//   box: [-0.03,0.05] [-0.02,0.02]
//   opts: tol=1e-8 max_depth=16 eps_radius=0.04 method=improved seed=0
//
// Every non-blank line is `key: value`. `vars` must precede the
// polynomials; any other identifier names a polynomial. Expressions use
// + - * ^ and parentheses over decimal literals and declared variables;
// multiplication is always explicit and exponents are non-negative integers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "singcert/errors.hpp"
#include "singcert/interval.hpp"
#include "singcert/polycore.hpp"

namespace singcert {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  /// 1-based.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ProblemOptions {
  std::optional<double> tol;
  std::optional<int> max_depth;
  std::optional<double> eps_radius;
  std::optional<std::string> method;
  std::optional<std::uint64_t> seed;

  bool empty() const { return !tol && !max_depth && !eps_radius && !method && !seed; }
  bool operator==(const ProblemOptions&) const = default;
};

struct ProblemFile {
  std::vector<std::string> vars;
  std::vector<std::string> names;
  std::vector<Polynomial> polys;
  std::optional<Point> point;
  std::optional<Box> box;
  ProblemOptions opts;

  PolynomialSystem system() const { return PolynomialSystem(polys, vars); }
  bool operator==(const ProblemFile&) const = default;
};

ProblemFile parse_problem(const std::string& text);
/// Reads and parses a file; unreadable files raise InvalidArgument.
ProblemFile load_problem(const std::string& path);
/// Canonical text form; parse_problem(print_problem(p)) == p.
std::string print_problem(const ProblemFile& p);

/// Parses a single expression over the given variables (column numbers in
/// errors count from 1 within `expr`).
Polynomial parse_polynomial(const std::string& expr, const std::vector<std::string>& vars);

}  // namespace singcert
