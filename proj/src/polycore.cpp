#include "singcert/polycore.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace singcert {

MultiIndex::MultiIndex(std::initializer_list<int> exps) : MultiIndex(std::vector<int>(exps)) {}

MultiIndex::MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw InvalidArgument("negative exponent in multi-index");
    degree_ += e;
  }
}

MultiIndex MultiIndex::unit(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw IndexOutOfRange("variable index out of range");
  MultiIndex m(nvars);
  m.exps_[var] = 1;
  m.degree_ = 1;
  return m;
}

bool MultiIndex::divides(const MultiIndex& other) const {
  if (other.size() != size()) throw DimensionMismatch("multi-index arity mismatch");
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) throw DimensionMismatch("multi-index arity mismatch");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ += other.degree_;
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.divides(*this)) throw InvalidArgument("multi-index difference would be negative");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  r.degree_ -= other.degree_;
  return r;
}

MultiIndex MultiIndex::with(std::size_t var, int exponent) const {
  if (var >= size()) throw IndexOutOfRange("variable index out of range");
  if (exponent < 0) throw InvalidArgument("negative exponent in multi-index");
  MultiIndex r = *this;
  r.degree_ += exponent - r.exps_[var];
  r.exps_[var] = exponent;
  return r;
}

MultiIndex MultiIndex::extended(std::size_t extra) const {
  MultiIndex r = *this;
  r.exps_.resize(exps_.size() + extra, 0);
  return r;
}

bool MultiIndex::operator<(const MultiIndex& other) const {
  if (degree_ != other.degree_) return degree_ < other.degree_;
  return exps_ < other.exps_;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exps_[i]);
  }
  return s + ")";
}

std::vector<MultiIndex> monomials_of_degree(std::size_t nvars, int degree) {
  std::vector<MultiIndex> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> e(nvars, 0);
  // Enumerate compositions; sort afterwards so the order is the library order.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> monomials_up_to(std::size_t nvars, int max_degree) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto layer = monomials_of_degree(nvars, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

namespace {
double binom1(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}
}  // namespace

double binomial(const MultiIndex& beta, const MultiIndex& alpha) {
  if (beta.size() != alpha.size()) throw DimensionMismatch("multi-index arity mismatch");
  double r = 1.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (alpha[i] > beta[i]) return 0.0;
    r *= binom1(beta[i], alpha[i]);
  }
  return r;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> default_variable_names(std::size_t nvars) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

namespace {
std::string monomial_string(const MultiIndex& alpha, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (alpha[i] > 1) s += "^" + std::to_string(alpha[i]);
  }
  return s;
}

template <class Terms>
std::string terms_string(const Terms& terms, const std::vector<std::string>& names,
                         auto&& render_monomial) {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  // Highest terms first, as conventionally written.
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [alpha, c] = *it;
    double mag = std::abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono = render_monomial(alpha, names);
    if (mono.empty()) {
      s += format_double(mag);
    } else if (mag == 1.0) {
      s += mono;
    } else {
      s += format_double(mag) + "*" + mono;
    }
  }
  return s;
}
}  // namespace

std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  if (names.size() != p.nvars()) throw DimensionMismatch("variable name count does not match polynomial");
  return terms_string(p.terms(), names, monomial_string);
}

PolynomialSystem::PolynomialSystem(std::vector<Polynomial> polys, std::vector<std::string> names)
    : polys_(std::move(polys)), names_(std::move(names)) {
  if (polys_.empty()) throw InvalidArgument("a polynomial system needs at least one polynomial");
  for (const auto& p : polys_)
    if (p.nvars() != names_.size()) throw DimensionMismatch("polynomial arity does not match the system");
}

PolynomialSystem::PolynomialSystem(std::vector<Polynomial> polys, std::size_t nvars)
    : PolynomialSystem(std::move(polys), default_variable_names(nvars)) {}

std::vector<double> PolynomialSystem::eval(std::span<const double> pt) const {
  std::vector<double> out;
  out.reserve(polys_.size());
  for (const auto& p : polys_) out.push_back(p.eval(pt));
  return out;
}

std::vector<std::vector<Polynomial>> PolynomialSystem::jacobian() const {
  std::vector<std::vector<Polynomial>> j(polys_.size());
  for (std::size_t i = 0; i < polys_.size(); ++i)
    for (std::size_t k = 0; k < nvars(); ++k) j[i].push_back(polys_[i].diff(k));
  return j;
}

double PolynomialSystem::max_abs_residual(std::span<const double> pt) const {
  double r = 0.0;
  for (double v : eval(pt)) r = std::max(r, std::abs(v));
  return r;
}

double eval(const Polynomial& p, std::span<const double> pt) { return p.eval(pt); }
Polynomial diff(const Polynomial& p, std::size_t var) { return p.diff(var); }
Polynomial poly_mul(const Polynomial& p, const Polynomial& q) { return p * q; }

// ---------------------------------------------------------------------------
// DualElement

DualElement::DualElement(Point base, Terms terms) : base_(std::move(base)) {
  for (const auto& [alpha, c] : terms) add_term(alpha, c);
}

DualElement DualElement::one(Point base) {
  DualElement d(std::move(base));
  d.add_term(MultiIndex(d.nvars()), 1.0);
  return d;
}

DualElement DualElement::differential(Point base, const MultiIndex& alpha, double c) {
  DualElement d(std::move(base));
  d.add_term(alpha, c);
  return d;
}

int DualElement::degree() const {
  int d = -1;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.degree());
  return d;
}

double DualElement::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

double DualElement::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void DualElement::add_term(const MultiIndex& alpha, double c) {
  if (alpha.size() != nvars()) throw DimensionMismatch("differential arity does not match base point");
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

DualElement DualElement::pruned(double threshold) const {
  DualElement r(base_);
  for (const auto& [alpha, c] : terms_)
    if (std::abs(c) > threshold) r.terms_.emplace(alpha, c);
  return r;
}

DualElement DualElement::extended(std::size_t extra) const {
  Point base = base_;
  base.resize(base.size() + extra, 0.0);
  DualElement r(std::move(base));
  for (const auto& [alpha, c] : terms_) r.terms_.emplace(alpha.extended(extra), c);
  return r;
}

void DualElement::check_same_point(const DualElement& other) const {
  if (other.base_ != base_) throw InvalidArgument("dual elements are anchored at different points");
}

DualElement& DualElement::operator+=(const DualElement& other) {
  check_same_point(other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

DualElement& DualElement::operator-=(const DualElement& other) {
  check_same_point(other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

DualElement& DualElement::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, c] : terms_) c *= s;
  return *this;
}

std::string DualElement::to_string(const std::vector<std::string>& names) const {
  if (names.size() != nvars()) throw DimensionMismatch("variable name count does not match dual element");
  auto render = [](const MultiIndex& alpha, const std::vector<std::string>& vn) {
    std::string s;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += "d" + vn[i];
      if (alpha[i] > 1) s += "^" + std::to_string(alpha[i]);
    }
    return s;
  };
  return terms_string(terms_, names, render);
}

double dual_apply(const DualElement& lambda, const Polynomial& g) {
  return dual_apply<double>(lambda, g, std::span<const double>(lambda.base()));
}

double dual_apply(const DualElement& lambda, const Polynomial& g, std::span<const double> pt) {
  return dual_apply<double>(lambda, g, pt);
}

Polynomial dual_apply_symbolic(const DualElement& lambda, const Polynomial& g) {
  if (lambda.nvars() != g.nvars()) throw DimensionMismatch("dual element and polynomial arity differ");
  Polynomial r(g.nvars());
  for (const auto& [alpha, c] : lambda.terms())
    for (const auto& [beta, gc] : g.terms())
      if (alpha.divides(beta)) r.add_term(beta - alpha, c * gc * binomial(beta, alpha));
  return r;
}

DualElement dual_diff(const DualElement& lambda, std::size_t var) {
  if (var >= lambda.nvars()) throw IndexOutOfRange("variable index out of range");
  DualElement r(lambda.base());
  for (const auto& [alpha, c] : lambda.terms())
    if (alpha[var] > 0) r.add_term(alpha.with(var, alpha[var] - 1), c);
  return r;
}

DualElement dual_antiderivative(const DualElement& lambda, std::size_t var) {
  if (var >= lambda.nvars()) throw IndexOutOfRange("variable index out of range");
  DualElement r(lambda.base());
  for (const auto& [alpha, c] : lambda.terms()) r.add_term(alpha.with(var, alpha[var] + 1), c);
  return r;
}

DualElement dual_truncate(const DualElement& lambda, std::size_t keep) {
  DualElement r(lambda.base());
  for (const auto& [alpha, c] : lambda.terms()) {
    bool drop = false;
    for (std::size_t i = keep; i < alpha.size(); ++i) drop = drop || alpha[i] > 0;
    if (!drop) r.add_term(alpha, c);
  }
  return r;
}

}  // namespace singcert
