#pragma once

// Closed intervals of binary64 numbers with outward rounding.
//
// Sums and products are rounded exactly outward: the rounding error of each
// floating-point operation is recovered with an error-free transformation
// (TwoSum, fma) and the bound is moved one ulp only when the result was
// inexact in the unsafe direction. Quotients are widened by one ulp on both
// sides unconditionally.

#include <string>
#include <vector>

#include "singcert/polycore.hpp"

namespace singcert {

class Interval {
 public:
  Interval() = default;
  Interval(double v) : lo_(v), hi_(v) {}  // NOLINT: exact point interval
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  /// Rounded to nearest; not necessarily exactly central.
  double midpoint() const noexcept { return lo_ + 0.5 * (hi_ - lo_); }
  /// Upper bound on hi - lo.
  double width() const noexcept;
  double mag() const noexcept;

  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const noexcept { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const noexcept { return lo_ <= 0.0 && 0.0 <= hi_; }

  Interval operator-() const noexcept { return {-hi_, -lo_, Raw{}}; }
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws InvalidArgument when b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  bool operator==(const Interval&) const = default;

  std::string to_string() const;

 private:
  struct Raw {};
  Interval(double lo, double hi, Raw) noexcept : lo_(lo), hi_(hi) {}
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// x^e, tight for even e (an interval around zero maps to [0, mag^e]).
Interval ipow(const Interval& x, int e);

/// c < a and b < d for inner = [a, b], outer = [c, d].
bool strictly_interior(const Interval& inner, const Interval& outer) noexcept;
Interval hull(const Interval& a, const Interval& b) noexcept;

// Rounded primitives, exposed for testing.
double add_down(double a, double b) noexcept;
double add_up(double a, double b) noexcept;
double mul_down(double a, double b) noexcept;
double mul_up(double a, double b) noexcept;

template <>
struct ScalarTraits<Interval> {
  /// Interval coefficients are never dropped.
  static bool negligible(const Interval&) { return false; }
};

using Box = std::vector<Interval>;

bool strictly_interior(const Box& inner, const Box& outer);
Box box_from_bounds(const std::vector<std::pair<double, double>>& bounds);
Point box_midpoint(const Box& b);

class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Interval& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Interval& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Box operator*(const Box& x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Interval> data_;
};

/// Encloses {p(x) : x in z} by evaluating the monomial form in interval
/// arithmetic.
Interval interval_eval(const Polynomial& p, const Box& z);

/// Entry (i, j) encloses d f_i / d x_j over z.
IntervalMatrix interval_jacobian(const PolynomialSystem& f, const Box& z);

}  // namespace singcert
