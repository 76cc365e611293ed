#pragma once

// Systems shared by the unit and acceptance tests.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "singcert/polycore.hpp"
#include "singcert/problem.hpp"

namespace fixture {

inline singcert::Polynomial poly(const std::string& expr, const std::vector<std::string>& vars) {
  return singcert::parse_polynomial(expr, vars);
}

inline singcert::PolynomialSystem system(const std::vector<std::string>& exprs, const std::vector<std::string>& vars) {
  std::vector<singcert::Polynomial> ps;
  for (const auto& e : exprs) ps.push_back(poly(e, vars));
  return singcert::PolynomialSystem(ps, vars);
}

inline const std::vector<std::string> kX12{"x1", "x2"};
inline const std::vector<std::string> kXY{"x", "y"};

/// f1 = x1 - x2 + x1^2, f2 = x1 - x2 + x2^2, triple root at 0.
inline singcert::PolynomialSystem running() { return system({"x1 - x2 + x1^2", "x1 - x2 + x2^2"}, kX12); }

/// Three cubics in two variables, mu = 7 at 0.
inline singcert::PolynomialSystem lvz() {
  return system({"x1^3 + x1*x2^2", "x1*x2^2 + x2^3", "x1^2*x2 + x1*x2^2"}, kX12);
}

/// Perturbed running example; the approximate root is (.01, -.01).
inline singcert::PolynomialSystem perturbed() {
  return system({"1.071*x1 - 1.069*x2 + 1.018*x1^2", "1.024*x1 - 1.016*x2 + 1.058*x2^2"}, kX12);
}

/// (x1^2 x2 - x1 x2^2, x1 - x2^2), mu = 4 at 0.
inline singcert::PolynomialSystem cusp() { return system({"x1^2*x2 - x1*x2^2", "x1 - x2^2"}, kX12); }

/// Quartic curve with a triple point at the origin.
inline singcert::PolynomialSystem quartic() { return system({"x^4 + 2*x^2*y^2 + y^4 + 3*x^2*y - y^3"}, kXY); }

inline singcert::PolynomialSystem quartic_with_g() {
  return system({"x^4 + 2*x^2*y^2 + y^4 + 3*x^2*y - y^3", "18*x*y^2 - 6*x^3"}, kXY);
}

/// Q_Phi of the quartic pair over B = (1, y, x, y^2, xy, x^2, y^3, xy^2, x^2y).
inline Eigen::MatrixXd quartic_q() {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(9, 9);
  auto set = [&](int i, int j, double v) { q(i, j) = q(j, i) = v; };
  set(0, 6, 1);
  set(1, 3, 1);
  set(1, 6, 0.375);
  set(1, 8, 0.125);
  set(2, 7, 0.125);
  set(3, 3, 0.375);
  set(3, 5, 0.125);
  set(4, 4, 0.125);
  set(5, 5, 0.375);
  return q;
}

/// NF(b_i b_j) for the quartic pair, same basis order.
inline std::vector<std::vector<std::string>> quartic_table() {
  const std::string a = "0.375*y^3 - 1.125*x^2*y";
  const std::string b = "0.125*y^3 - 0.375*x^2*y";
  return {
      {"1", "y", "x", "y^2", "x*y", "x^2", "y^3", "x*y^2", "x^2*y"},
      {"y", "y^2", "x*y", "y^3", "x*y^2", "x^2*y", a, "0", b},
      {"x", "x*y", "x^2", "x*y^2", "x^2*y", "3*x*y^2", "0", b, "0"},
      {"y^2", "y^3", "x*y^2", a, "0", b, "0", "0", "0"},
      {"x*y", "x*y^2", "x^2*y", "0", b, "0", "0", "0", "0"},
      {"x^2", "x^2*y", "3*x*y^2", b, "0", a, "0", "0", "0"},
      {"y^3", a, "0", "0", "0", "0", "0", "0", "0"},
      {"x*y^2", "0", b, "0", "0", "0", "0", "0", "0"},
      {"x^2*y", b, "0", "0", "0", "0", "0", "0", "0"},
  };
}

inline std::string problem_path(const std::string& name) { return std::string(SINGCERT_PROBLEMS_DIR) + "/" + name; }

}  // namespace fixture
