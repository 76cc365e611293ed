#include "singcert/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace singcert {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Recursive-descent expression parser over one line segment. `col0` is the
// column of text[0] in the source line.
class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<std::string>& vars, std::size_t line, std::size_t col0)
      : s_(text), vars_(vars), line_(line), col0_(col0) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ == s_.size()) fail("expected an expression");
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col0_ + pos_, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (peek('*')) {
      ++pos_;
      acc = acc * unary();
    }
    return acc;
  }

  Polynomial unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
      if (start == pos_) {
        pos_ = start;
        fail("exponent must be a non-negative integer literal");
      }
      int e = 0;
      auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, e);
      if (ec != std::errc() || e > 1000) {
        pos_ = start;
        fail("exponent out of range");
      }
      base = base.pow(e);
    }
    skip_ws();
    if (pos_ < s_.size() && (is_ident_start(s_[pos_]) || is_digit(s_[pos_]) || s_[pos_] == '.' || s_[pos_] == '('))
      fail("implicit multiplication is not allowed; use '*'");
    return base;
  }

  Polynomial primary() {
    skip_ws();
    const std::size_t n = vars_.size();
    if (pos_ == s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (is_digit(c) || c == '.') return Polynomial::constant(n, number());
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("undeclared variable '" + name + "'");
      }
      return Polynomial::variable(n, static_cast<std::size_t>(it - vars_.begin()));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  double number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && is_digit(s_[pos_])) {
        while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
      } else {
        pos_ = save;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return v;
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t line_;
  std::size_t col0_;
  std::size_t pos_ = 0;
};

struct Field {
  std::string_view text;
  std::size_t col;  // 1-based column of text[0]
};

// Whitespace-separated fields of a value.
std::vector<Field> split_fields(std::string_view v, std::size_t col0) {
  std::vector<Field> out;
  std::size_t i = 0;
  while (i < v.size()) {
    while (i < v.size() && (v[i] == ' ' || v[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < v.size() && v[i] != ' ' && v[i] != '\t') ++i;
    if (i > start) out.push_back({v.substr(start, i - start), col0 + start});
  }
  return out;
}

double parse_number(std::string_view s, std::size_t line, std::size_t col) {
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError(line, col, "malformed number '" + std::string(s) + "'");
  return v;
}

Box parse_box(std::string_view v, std::size_t line, std::size_t col0) {
  Box out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < v.size() && (v[i] == ' ' || v[i] == '\t')) ++i;
  };
  auto until = [&](char stop) {
    skip();
    std::size_t start = i;
    while (i < v.size() && v[i] != stop && v[i] != ' ' && v[i] != '\t') ++i;
    Field f{v.substr(start, i - start), col0 + start};
    skip();
    if (i == v.size() || v[i] != stop) throw ParseError(line, col0 + i, std::string("expected '") + stop + "'");
    ++i;
    return f;
  };
  skip();
  while (i < v.size()) {
    if (v[i] != '[') throw ParseError(line, col0 + i, "expected '[' to open an interval");
    ++i;
    Field lo = until(',');
    Field hi = until(']');
    double a = parse_number(lo.text, line, lo.col);
    double b = parse_number(hi.text, line, hi.col);
    if (a > b) throw ParseError(line, lo.col, "interval lower bound exceeds upper bound");
    out.emplace_back(a, b);
    skip();
  }
  return out;
}

ProblemOptions parse_opts(std::string_view v, std::size_t line, std::size_t col0) {
  ProblemOptions o;
  std::set<std::string> seen;
  for (const Field& f : split_fields(v, col0)) {
    auto eq = f.text.find('=');
    if (eq == std::string_view::npos || eq == 0) throw ParseError(line, f.col, "expected key=value");
    std::string key(f.text.substr(0, eq));
    std::string_view val = f.text.substr(eq + 1);
    std::size_t vcol = f.col + eq + 1;
    if (!seen.insert(key).second) throw ParseError(line, f.col, "option '" + key + "' given twice");
    if (key == "tol") {
      double t = parse_number(val, line, vcol);
      if (!(t > 0)) throw ParseError(line, vcol, "tol must be positive");
      o.tol = t;
    } else if (key == "eps_radius") {
      double r = parse_number(val, line, vcol);
      if (r < 0) throw ParseError(line, vcol, "eps_radius must be non-negative");
      o.eps_radius = r;
    } else if (key == "max_depth") {
      int d = 0;
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), d);
      if (ec != std::errc() || ptr != val.data() + val.size() || d < 1)
        throw ParseError(line, vcol, "max_depth must be a positive integer");
      o.max_depth = d;
    } else if (key == "seed") {
      std::uint64_t s = 0;
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), s);
      if (ec != std::errc() || ptr != val.data() + val.size())
        throw ParseError(line, vcol, "seed must be a non-negative integer");
      o.seed = s;
    } else if (key == "method") {
      if (val != "macaulay" && val != "integration" && val != "improved")
        throw ParseError(line, vcol, "method must be macaulay, integration or improved");
      o.method = std::string(val);
    } else {
      throw ParseError(line, f.col, "unknown option '" + key + "'");
    }
  }
  return o;
}

}  // namespace

Polynomial parse_polynomial(const std::string& expr, const std::vector<std::string>& vars) {
  return ExprParser(expr, vars, 1, 1).parse();
}

ProblemFile parse_problem(const std::string& text) {
  ProblemFile p;
  bool have_vars = false;
  std::set<std::string> keys_seen;
  std::size_t point_line = 0, box_line = 0;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) continue;

    std::size_t key_start = i;
    if (!is_ident_start(line[i])) throw ParseError(lineno, i + 1, "expected a key");
    while (i < line.size() && is_ident_char(line[i])) ++i;
    std::string key(line.substr(key_start, i - key_start));
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size() || line[i] != ':') throw ParseError(lineno, i + 1, "expected ':' after key");
    ++i;
    std::string_view value = line.substr(i);
    const std::size_t vcol = i + 1;

    const bool reserved = key == "vars" || key == "point" || key == "box" || key == "opts";
    if (reserved && !keys_seen.insert(key).second)
      throw ParseError(lineno, key_start + 1, "'" + key + "' given twice");

    if (key == "vars") {
      if (!p.polys.empty()) throw ParseError(lineno, key_start + 1, "'vars' must precede the polynomials");
      for (const Field& f : split_fields(value, vcol)) {
        if (!is_ident_start(f.text[0]) ||
            !std::all_of(f.text.begin(), f.text.end(), [](char c) { return is_ident_char(c); }))
          throw ParseError(lineno, f.col, "invalid variable name '" + std::string(f.text) + "'");
        std::string name(f.text);
        if (std::find(p.vars.begin(), p.vars.end(), name) != p.vars.end())
          throw ParseError(lineno, f.col, "variable '" + name + "' declared twice");
        p.vars.push_back(name);
      }
      if (p.vars.empty()) throw ParseError(lineno, vcol, "no variables declared");
      have_vars = true;
    } else if (key == "point") {
      Point pt;
      for (const Field& f : split_fields(value, vcol)) pt.push_back(parse_number(f.text, lineno, f.col));
      p.point = pt;
      point_line = lineno;
    } else if (key == "box") {
      p.box = parse_box(value, lineno, vcol);
      box_line = lineno;
    } else if (key == "opts") {
      p.opts = parse_opts(value, lineno, vcol);
    } else {
      if (!have_vars) throw ParseError(lineno, key_start + 1, "'vars' must be declared before polynomial '" + key + "'");
      if (std::find(p.names.begin(), p.names.end(), key) != p.names.end())
        throw ParseError(lineno, key_start + 1, "polynomial '" + key + "' defined twice");
      p.names.push_back(key);
      p.polys.push_back(ExprParser(value, p.vars, lineno, vcol).parse());
    }
  }

  if (!have_vars) throw ParseError(lineno + 1, 1, "missing 'vars'");
  if (p.polys.empty()) throw ParseError(lineno + 1, 1, "no polynomials given");
  if (p.point && p.point->size() != p.vars.size())
    throw ParseError(point_line, 1,
                     "point has " + std::to_string(p.point->size()) + " coordinates for " +
                         std::to_string(p.vars.size()) + " variables");
  if (p.box && p.box->size() != p.vars.size())
    throw ParseError(box_line, 1,
                     "box has " + std::to_string(p.box->size()) + " intervals for " + std::to_string(p.vars.size()) +
                         " variables");
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_problem(ss.str());
}

std::string print_problem(const ProblemFile& p) {
  std::string s = "vars:";
  for (const auto& v : p.vars) s += " " + v;
  s += "\n";
  for (std::size_t i = 0; i < p.polys.size(); ++i) s += p.names[i] + ": " + to_string(p.polys[i], p.vars) + "\n";
  if (p.point) {
    s += "point:";
    for (double v : *p.point) s += " " + format_double(v);
    s += "\n";
  }
  if (p.box) {
    s += "box:";
    for (const auto& iv : *p.box) s += " [" + format_double(iv.lo()) + "," + format_double(iv.hi()) + "]";
    s += "\n";
  }
  if (!p.opts.empty()) {
    s += "opts:";
    const auto& o = p.opts;
    if (o.tol) s += " tol=" + format_double(*o.tol);
    if (o.max_depth) s += " max_depth=" + std::to_string(*o.max_depth);
    if (o.eps_radius) s += " eps_radius=" + format_double(*o.eps_radius);
    if (o.method) s += " method=" + *o.method;
    if (o.seed) s += " seed=" + std::to_string(*o.seed);
    s += "\n";
  }
  return s;
}

}  // namespace singcert
