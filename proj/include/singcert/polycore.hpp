#pragma once

// Sparse multivariate polynomials and differential (dual) functionals.
//
// Polynomials are generic over their coefficient scalar; evaluation is
// generic over the point scalar, so the same code path evaluates in binary64
// and in interval arithmetic (see interval.hpp).

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "singcert/errors.hpp"

namespace singcert {

/// Exponent vector alpha in N^n.
///
/// Ordering (operator<) is the library-wide monomial order: graded, ties
/// broken lexicographically with variable 0 most significant. Ascending order
/// in two variables is therefore 1, x2, x1, x2^2, x1x2, x1^2, x2^3, ...
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t nvars) : exps_(nvars, 0) {}
  MultiIndex(std::initializer_list<int> exps);
  explicit MultiIndex(std::vector<int> exps);

  static MultiIndex unit(std::size_t nvars, std::size_t var);

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }
  int degree() const noexcept { return degree_; }

  /// Componentwise <=.
  bool divides(const MultiIndex& other) const;
  MultiIndex operator+(const MultiIndex& other) const;
  /// Requires divides(other) in the reverse direction: other <= *this.
  MultiIndex operator-(const MultiIndex& other) const;
  MultiIndex with(std::size_t var, int exponent) const;
  /// Appends `extra` zero exponents.
  MultiIndex extended(std::size_t extra) const;

  bool operator==(const MultiIndex& other) const = default;
  bool operator<(const MultiIndex& other) const;

  std::string to_string() const;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// All exponents with |alpha| <= max_degree, ascending in the monomial order.
std::vector<MultiIndex> monomials_up_to(std::size_t nvars, int max_degree);
/// All exponents with |alpha| == degree, ascending in the monomial order.
std::vector<MultiIndex> monomials_of_degree(std::size_t nvars, int degree);

/// prod_i binom(beta_i, alpha_i); zero unless alpha <= beta.
double binomial(const MultiIndex& beta, const MultiIndex& alpha);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr double kDropThreshold = 1e-14;
  static bool negligible(double c) { return std::abs(c) < kDropThreshold; }
};

inline double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

/// Sparse polynomial: map from exponent to nonzero coefficient.
template <class S>
class BasicPolynomial {
 public:
  using Terms = std::map<MultiIndex, S>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::size_t nvars) : nvars_(nvars) {}

  static BasicPolynomial constant(std::size_t nvars, S c) {
    BasicPolynomial p(nvars);
    p.add_term(MultiIndex(nvars), c);
    return p;
  }
  static BasicPolynomial variable(std::size_t nvars, std::size_t var) {
    return monomial(MultiIndex::unit(nvars, var), S(1));
  }
  static BasicPolynomial monomial(const MultiIndex& alpha, S c = S(1)) {
    BasicPolynomial p(alpha.size());
    p.add_term(alpha, c);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  int degree() const {
    int d = -1;
    for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.degree());
    return d;
  }

  S coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? S(0) : it->second;
  }

  /// Accumulates c * x^alpha; drops the term when the sum is negligible.
  void add_term(const MultiIndex& alpha, S c) {
    if (alpha.size() != nvars_) throw DimensionMismatch("monomial arity does not match polynomial");
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) it->second = it->second + c;
    if (ScalarTraits<S>::negligible(it->second)) terms_.erase(it);
  }

  template <class T>
  T eval(std::span<const T> pt) const {
    if (pt.size() != nvars_) throw DimensionMismatch("point dimension does not match polynomial");
    T acc(0);
    for (const auto& [alpha, c] : terms_) {
      T term(c);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (alpha[i] > 0) term = term * ipow(pt[i], alpha[i]);
      acc = acc + term;
    }
    return acc;
  }

  BasicPolynomial diff(std::size_t var) const {
    if (var >= nvars_) throw IndexOutOfRange("variable index out of range");
    BasicPolynomial r(nvars_);
    for (const auto& [alpha, c] : terms_)
      if (alpha[var] > 0) r.add_term(alpha.with(var, alpha[var] - 1), c * S(alpha[var]));
    return r;
  }

  BasicPolynomial operator-() const {
    BasicPolynomial r(nvars_);
    for (const auto& [alpha, c] : terms_) r.terms_.emplace(alpha, -c);
    return r;
  }

  BasicPolynomial& operator+=(const BasicPolynomial& q) {
    check_same(q);
    for (const auto& [alpha, c] : q.terms_) add_term(alpha, c);
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& q) {
    check_same(q);
    for (const auto& [alpha, c] : q.terms_) add_term(alpha, -c);
    return *this;
  }
  BasicPolynomial& operator*=(S s) {
    BasicPolynomial r(nvars_);
    for (const auto& [alpha, c] : terms_) r.add_term(alpha, c * s);
    *this = std::move(r);
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial p, const BasicPolynomial& q) { return p += q; }
  friend BasicPolynomial operator-(BasicPolynomial p, const BasicPolynomial& q) { return p -= q; }
  friend BasicPolynomial operator*(BasicPolynomial p, S s) { return p *= s; }
  friend BasicPolynomial operator*(S s, BasicPolynomial p) { return p *= s; }

  friend BasicPolynomial operator*(const BasicPolynomial& p, const BasicPolynomial& q) {
    p.check_same(q);
    BasicPolynomial r(p.nvars_);
    for (const auto& [a, ca] : p.terms_)
      for (const auto& [b, cb] : q.terms_) r.add_term(a + b, ca * cb);
    return r;
  }

  BasicPolynomial pow(int e) const {
    BasicPolynomial r = constant(nvars_, S(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Same polynomial viewed in nvars() + extra variables.
  BasicPolynomial extended(std::size_t extra) const {
    BasicPolynomial r(nvars_ + extra);
    for (const auto& [alpha, c] : terms_) r.terms_.emplace(alpha.extended(extra), c);
    return r;
  }

  /// Sets the listed variables to zero and removes them from the variable set.
  BasicPolynomial without_variables(const std::vector<std::size_t>& vars) const {
    std::vector<bool> drop(nvars_, false);
    for (auto v : vars) {
      if (v >= nvars_) throw IndexOutOfRange("variable index out of range");
      drop[v] = true;
    }
    std::size_t kept = 0;
    for (bool d : drop) kept += d ? 0 : 1;
    BasicPolynomial r(kept);
    for (const auto& [alpha, c] : terms_) {
      std::vector<int> e;
      e.reserve(kept);
      bool vanishes = false;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (!drop[i]) e.push_back(alpha[i]);
        else if (alpha[i] > 0) vanishes = true;
      }
      if (!vanishes) r.add_term(MultiIndex(std::move(e)), c);
    }
    return r;
  }

  /// Coefficients of the expansion in powers of (x - center).
  BasicPolynomial taylor_shift(std::span<const double> center) const {
    if (center.size() != nvars_) throw DimensionMismatch("center dimension does not match polynomial");
    BasicPolynomial r(nvars_);
    for (const auto& [beta, c] : terms_) {
      // c * prod_i (y_i + z_i)^{beta_i}
      std::vector<MultiIndex> lower = sub_indices(beta);
      for (const auto& alpha : lower) {
        S coef = c * S(binomial(beta, alpha));
        for (std::size_t i = 0; i < nvars_; ++i)
          if (beta[i] > alpha[i]) coef = coef * S(ipow(center[i], beta[i] - alpha[i]));
        r.add_term(alpha, coef);
      }
    }
    return r;
  }

  bool operator==(const BasicPolynomial& other) const = default;

 private:
  void check_same(const BasicPolynomial& q) const {
    if (q.nvars_ != nvars_) throw DimensionMismatch("polynomials live in different rings");
  }

  static std::vector<MultiIndex> sub_indices(const MultiIndex& beta) {
    std::vector<MultiIndex> out{MultiIndex(beta.size())};
    for (std::size_t i = 0; i < beta.size(); ++i) {
      std::vector<MultiIndex> next;
      for (const auto& a : out)
        for (int e = 0; e <= beta[i]; ++e) next.push_back(a.with(i, e));
      out = std::move(next);
    }
    return out;
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

using Polynomial = BasicPolynomial<double>;
using Point = std::vector<double>;

/// Human-readable form, e.g. "1.018*x1^2 + 1.071*x1 - 1.069*x2". The output
/// is accepted by the problem-file expression grammar and round-trips
/// exactly (shortest round-trip decimal for every coefficient).
std::string to_string(const Polynomial& p, const std::vector<std::string>& names);
std::string format_double(double v);
std::vector<std::string> default_variable_names(std::size_t nvars);

class PolynomialSystem {
 public:
  PolynomialSystem() = default;
  PolynomialSystem(std::vector<Polynomial> polys, std::vector<std::string> names);
  PolynomialSystem(std::vector<Polynomial> polys, std::size_t nvars);

  std::size_t size() const noexcept { return polys_.size(); }
  std::size_t nvars() const noexcept { return names_.size(); }
  const std::vector<Polynomial>& polynomials() const noexcept { return polys_; }
  const Polynomial& operator[](std::size_t i) const { return polys_[i]; }
  const std::vector<std::string>& variable_names() const noexcept { return names_; }

  std::vector<double> eval(std::span<const double> pt) const;
  /// Symbolic Jacobian, entry [i][j] = d f_i / d x_j.
  std::vector<std::vector<Polynomial>> jacobian() const;
  double max_abs_residual(std::span<const double> pt) const;

  bool operator==(const PolynomialSystem& other) const = default;

 private:
  std::vector<Polynomial> polys_;
  std::vector<std::string> names_;
};

// Free-function forms of the core operations.
double eval(const Polynomial& p, std::span<const double> pt);
Polynomial diff(const Polynomial& p, std::size_t var);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);

/// Finite combination sum_alpha c_alpha d^alpha of normalized differentials
/// d^alpha = (1/alpha!) partial^alpha at a base point.
///
/// Coefficients are always stored relative to d^alpha (never relative to the
/// unnormalized partial^alpha).
class DualElement {
 public:
  using Terms = std::map<MultiIndex, double>;

  DualElement() = default;
  explicit DualElement(Point base) : base_(std::move(base)) {}
  DualElement(Point base, Terms terms);

  /// The evaluation functional at `base`.
  static DualElement one(Point base);
  static DualElement differential(Point base, const MultiIndex& alpha, double c = 1.0);

  std::size_t nvars() const noexcept { return base_.size(); }
  const Point& base() const noexcept { return base_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const;
  double coefficient(const MultiIndex& alpha) const;
  double max_abs_coefficient() const;

  void add_term(const MultiIndex& alpha, double c);
  /// Removes coefficients with |c| <= threshold.
  DualElement pruned(double threshold) const;
  /// Same functional, acting on a ring with `extra` more variables (the
  /// base point is extended with zeros).
  DualElement extended(std::size_t extra) const;

  DualElement& operator+=(const DualElement& other);
  DualElement& operator-=(const DualElement& other);
  DualElement& operator*=(double s);
  friend DualElement operator+(DualElement a, const DualElement& b) { return a += b; }
  friend DualElement operator-(DualElement a, const DualElement& b) { return a -= b; }
  friend DualElement operator*(DualElement a, double s) { return a *= s; }
  friend DualElement operator*(double s, DualElement a) { return a *= s; }

  bool operator==(const DualElement& other) const = default;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void check_same_point(const DualElement& other) const;

  Point base_;
  Terms terms_;
};

/// Lambda(partial_x)[g] evaluated at `pt`:
/// sum_alpha c_alpha (1/alpha!) partial^alpha g (pt).
template <class T>
T dual_apply(const DualElement& lambda, const Polynomial& g, std::span<const T> pt) {
  if (lambda.nvars() != g.nvars() || pt.size() != g.nvars())
    throw DimensionMismatch("dual element, polynomial and point must share the variable count");
  T acc(0);
  for (const auto& [alpha, c] : lambda.terms()) {
    for (const auto& [beta, gc] : g.terms()) {
      if (!alpha.divides(beta)) continue;
      T term = T(c) * T(gc) * T(binomial(beta, alpha));
      for (std::size_t i = 0; i < pt.size(); ++i)
        if (beta[i] > alpha[i]) term = term * ipow(pt[i], beta[i] - alpha[i]);
      acc = acc + term;
    }
  }
  return acc;
}

/// Applies Lambda at its own base point.
double dual_apply(const DualElement& lambda, const Polynomial& g);
double dual_apply(const DualElement& lambda, const Polynomial& g, std::span<const double> pt);

/// The polynomial x -> Lambda(partial_x)[g] (differentiate, do not evaluate).
Polynomial dual_apply_symbolic(const DualElement& lambda, const Polynomial& g);

/// Derivative with respect to partial_k; equals multiplication of the
/// functional by (x_k - z_k). In the normalized basis d^alpha -> d^{alpha - e_k}.
DualElement dual_diff(const DualElement& lambda, std::size_t var);

/// The unique Phi with dual_diff(Phi, var) == lambda and no term free of
/// partial_var: d^alpha -> d^{alpha + e_var}.
DualElement dual_antiderivative(const DualElement& lambda, std::size_t var);

/// Lambda(partial_1, ..., partial_keep, 0, ..., 0): drops every term with a
/// positive exponent in a variable of index >= keep.
DualElement dual_truncate(const DualElement& lambda, std::size_t keep);

}  // namespace singcert
