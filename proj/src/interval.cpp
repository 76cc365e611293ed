#include "singcert/interval.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

namespace singcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude products may be subnormal and fma no longer returns
// the exact error; widen unconditionally there.
constexpr double kTiny = 1e-290;

double down(double x) noexcept { return std::nextafter(x, -kInf); }
double up(double x) noexcept { return std::nextafter(x, kInf); }

// Error of fl(a + b): a + b = s + e exactly (Knuth's TwoSum).
double two_sum_err(double a, double b, double s) noexcept {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

}  // namespace

double add_down(double a, double b) noexcept {
  double s = a + b;
  if (!std::isfinite(s)) return s == kInf ? DBL_MAX : s;
  return two_sum_err(a, b, s) < 0 ? down(s) : s;
}

double add_up(double a, double b) noexcept {
  double s = a + b;
  if (!std::isfinite(s)) return s == -kInf ? -DBL_MAX : s;
  return two_sum_err(a, b, s) > 0 ? up(s) : s;
}

double mul_down(double a, double b) noexcept {
  double p = a * b;
  if (!std::isfinite(p)) return p == kInf ? DBL_MAX : p;
  if (std::abs(p) < kTiny) return (a == 0.0 || b == 0.0) ? 0.0 : down(p);
  return std::fma(a, b, -p) < 0 ? down(p) : p;
}

double mul_up(double a, double b) noexcept {
  double p = a * b;
  if (!std::isfinite(p)) return p == -kInf ? -DBL_MAX : p;
  if (std::abs(p) < kTiny) return (a == 0.0 || b == 0.0) ? 0.0 : up(p);
  return std::fma(a, b, -p) > 0 ? up(p) : p;
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo <= hi)) throw InvalidArgument("interval lower bound exceeds upper bound");
}

double Interval::width() const noexcept { return add_up(hi_, -lo_); }
double Interval::mag() const noexcept { return std::max(std::abs(lo_), std::abs(hi_)); }

Interval operator+(const Interval& a, const Interval& b) {
  return {add_down(a.lo_, b.lo_), add_up(a.hi_, b.hi_), Interval::Raw{}};
}

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
  double lo = std::min({mul_down(a.lo_, b.lo_), mul_down(a.lo_, b.hi_), mul_down(a.hi_, b.lo_),
                        mul_down(a.hi_, b.hi_)});
  double hi = std::max({mul_up(a.lo_, b.lo_), mul_up(a.lo_, b.hi_), mul_up(a.hi_, b.lo_), mul_up(a.hi_, b.hi_)});
  return {lo, hi, Interval::Raw{}};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw InvalidArgument("interval division by an interval containing zero");
  double q[] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
  double lo = *std::min_element(std::begin(q), std::end(q));
  double hi = *std::max_element(std::begin(q), std::end(q));
  return {down(lo), up(hi), Interval::Raw{}};
}

std::string Interval::to_string() const { return "[" + format_double(lo_) + ", " + format_double(hi_) + "]"; }

namespace {
double pow_down(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r = mul_down(r, x);
  return r;
}
double pow_up(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r = mul_up(r, x);
  return r;
}
}  // namespace

Interval ipow(const Interval& x, int e) {
  if (e < 0) throw InvalidArgument("negative exponent");
  if (e == 0) return Interval(1.0);
  if (e % 2 == 0) {
    double a = std::abs(x.lo()), b = std::abs(x.hi());
    if (x.contains_zero()) return Interval(0.0, pow_up(std::max(a, b), e));
    return Interval(pow_down(std::min(a, b), e), pow_up(std::max(a, b), e));
  }
  auto odd_down = [&](double v) { return v >= 0 ? pow_down(v, e) : -pow_up(-v, e); };
  auto odd_up = [&](double v) { return v >= 0 ? pow_up(v, e) : -pow_down(-v, e); };
  return Interval(odd_down(x.lo()), odd_up(x.hi()));
}

bool strictly_interior(const Interval& inner, const Interval& outer) noexcept {
  return outer.lo() < inner.lo() && inner.hi() < outer.hi();
}

Interval hull(const Interval& a, const Interval& b) noexcept {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

bool strictly_interior(const Box& inner, const Box& outer) {
  if (inner.size() != outer.size()) throw DimensionMismatch("boxes differ in dimension");
  for (std::size_t i = 0; i < inner.size(); ++i)
    if (!strictly_interior(inner[i], outer[i])) return false;
  return true;
}

Box box_from_bounds(const std::vector<std::pair<double, double>>& bounds) {
  Box b;
  for (const auto& [lo, hi] : bounds) b.emplace_back(lo, hi);
  return b;
}

Point box_midpoint(const Box& b) {
  Point p;
  for (const auto& iv : b) p.push_back(iv.midpoint());
  return p;
}

Box IntervalMatrix::operator*(const Box& x) const {
  if (x.size() != cols_) throw DimensionMismatch("interval matrix-vector size mismatch");
  Box out(rows_, Interval(0.0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * x[c];
  return out;
}

Interval interval_eval(const Polynomial& p, const Box& z) {
  if (z.size() != p.nvars()) throw DimensionMismatch("box dimension does not match polynomial");
  return p.eval<Interval>(std::span<const Interval>(z));
}

IntervalMatrix interval_jacobian(const PolynomialSystem& f, const Box& z) {
  if (f.size() != f.nvars()) throw DimensionMismatch("interval Jacobian needs a square system");
  if (z.size() != f.nvars()) throw DimensionMismatch("box dimension does not match the system");
  IntervalMatrix m(f.size(), f.nvars());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.nvars(); ++j) m(i, j) = interval_eval(f[i].diff(j), z);
  return m;
}

}  // namespace singcert
