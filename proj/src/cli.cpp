#include "singcert/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "singcert/problem.hpp"
#include "singcert/quotient.hpp"
#include "singcert/report.hpp"

namespace singcert {

namespace {

// Input that parses but cannot serve the requested command.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Flags {
  std::optional<double> tol;
  std::optional<int> max_depth;
  std::optional<double> eps_radius;
  std::optional<std::string> method;
  std::optional<std::uint64_t> seed;
  bool json = false;
  bool strict = false;
  std::string input;
};

// Command-line flags override the file's opts line, which overrides defaults.
struct Settings {
  double tol = kDefaultTol;
  int max_depth = 16;
  double eps_radius = 0.01;
  std::string method = "improved";
  std::uint64_t seed = 0;
};

Settings resolve(const Flags& f, const ProblemOptions& o) {
  Settings s;
  s.tol = f.tol.value_or(o.tol.value_or(s.tol));
  s.max_depth = f.max_depth.value_or(o.max_depth.value_or(s.max_depth));
  s.eps_radius = f.eps_radius.value_or(o.eps_radius.value_or(s.eps_radius));
  s.method = f.method.value_or(o.method.value_or(s.method));
  s.seed = f.seed.value_or(o.seed.value_or(s.seed));
  return s;
}

DualSpaceOptions dual_options(const Settings& s) {
  DualSpaceOptions d;
  d.tol = s.tol;
  d.max_depth = s.max_depth;
  return d;
}

template <class F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e.what());
  }
}

const Point& need_point(const ProblemFile& p) {
  if (!p.point) throw InputError("this command needs a 'point:' line");
  return *p.point;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string point_text(const Point& p) {
  std::vector<std::string> parts;
  for (double v : p) parts.push_back(format_double(v));
  return join(parts);
}

std::string size_text(const StepInfo& s) { return std::to_string(s.rows) + "x" + std::to_string(s.cols); }

Json problem_json(const ProblemFile& p, const Settings& s) {
  Json j = to_json(p.system());
  if (p.point) {
    Json pt = Json::array();
    for (double v : *p.point) pt.push_back(v);
    j["point"] = std::move(pt);
  }
  if (p.box) {
    Json b = Json::array();
    for (const auto& iv : *p.box) b.push_back(to_json(iv));
    j["box"] = std::move(b);
  }
  j["settings"] = {{"tol", s.tol},
                   {"max_depth", s.max_depth},
                   {"eps_radius", s.eps_radius},
                   {"method", s.method},
                   {"seed", s.seed}};
  return j;
}

void print_header(std::ostream& out, const ProblemFile& p, const std::string& command) {
  out << command << ": " << p.polys.size() << " equation" << (p.polys.size() == 1 ? "" : "s") << " in "
      << join(p.vars, ", ") << "\n";
  if (p.point) out << "point: " << point_text(*p.point) << "\n";
}

void print_steps(std::ostream& out, const StepStats& st) {
  out << "steps (" << st.method << "):\n";
  for (const auto& s : st.steps)
    out << "  t=" << s.depth << "  " << size_text(s) << "  new=" << s.new_elements << "\n";
  if (!st.steps.empty())
    out << "final matrix: " << size_text(st.final_step()) << " at depth " << st.final_step().depth
        << "; largest: " << size_text(st.largest_step()) << "\n";
}

void print_basis(std::ostream& out, const DualBasis& d, const std::vector<std::string>& names) {
  out << "multiplicity: " << d.multiplicity() << "\nnilindex: " << d.nilindex() << "\nbreadth: " << d.breadth()
      << "\nhilbert:";
  for (auto h : d.hilbert) out << " " << h;
  out << "\ndual basis:\n";
  for (const auto& e : d.elements) out << "  " << e.to_string(names) << "\n";
}

void print_primal(std::ostream& out, const PrimalDualPair& pair, const std::vector<std::string>& names) {
  std::vector<std::string> b;
  for (const auto& beta : pair.primal) b.push_back(monomial_text(beta, names));
  out << "primal basis: " << join(b, ", ") << "\n";
}

void print_system(std::ostream& out, const PolynomialSystem& f, const std::string& indent = "  ") {
  for (std::size_t i = 0; i < f.size(); ++i) out << indent << to_string(f[i], f.variable_names()) << "\n";
}

int cmd_analyze(const Flags& fl, std::ostream& out) {
  ProblemFile p = load_problem(fl.input);
  Settings s = resolve(fl, p.opts);
  const Point& z = need_point(p);
  PolynomialSystem f = p.system();
  DualSpaceOptions d = dual_options(s);
  Json j;
  j["command"] = "analyze";
  j["problem"] = problem_json(p, s);
  if (s.method == "improved") {
    PairResult r = stage("dualspace", [&] { return primal_dual_pair(f, z, d); });
    if (fl.json) {
      j["result"] = to_json(r.pair, p.vars);
      j["stats"] = to_json(r.stats);
    } else {
      print_header(out, p, "analyze");
      print_basis(out, r.pair.dual, p.vars);
      print_primal(out, r.pair, p.vars);
      print_steps(out, r.stats);
    }
  } else {
    DualResult r = stage("dualspace", [&] {
      return s.method == "macaulay" ? macaulay_dual_basis(f, z, d) : integration_dual_basis(f, z, d);
    });
    if (fl.json) {
      j["result"] = to_json(r.basis, p.vars);
      j["stats"] = to_json(r.stats);
    } else {
      print_header(out, p, "analyze");
      print_basis(out, r.basis, p.vars);
      print_steps(out, r.stats);
    }
  }
  if (fl.json) out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_deflate(const Flags& fl, std::ostream& out) {
  ProblemFile p = load_problem(fl.input);
  Settings s = resolve(fl, p.opts);
  const Point& z = need_point(p);
  PolynomialSystem f = p.system();
  PairResult r = stage("dualspace", [&] { return primal_dual_pair(f, z, dual_options(s)); });
  DeflatedSystem t1 = stage("deflate", [&] { return deflated_theorem1(f, r.pair.dual, z, s.tol); });
  Theorem2Options o2;
  o2.tol = s.tol;
  DeflatedSystem t2 = stage("deflate", [&] { return deflated_theorem2(f, r.pair, z, o2); });
  if (fl.json) {
    Json j;
    j["command"] = "deflate";
    j["problem"] = problem_json(p, s);
    j["pair"] = to_json(r.pair, p.vars);
    j["theorem1"] = to_json(t1);
    j["theorem2"] = to_json(t2);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  print_header(out, p, "deflate");
  out << "multiplicity: " << r.pair.multiplicity() << "\n";
  print_primal(out, r.pair, p.vars);
  out << "theorem 1 system (" << t1.equations.size() << " equations in " << join(t1.equations.variable_names(), ", ")
      << "):\n";
  print_system(out, t1.equations);
  out << "theorem 2 system (" << t2.equations.size() << " equations in " << join(t2.equations.variable_names(), ", ")
      << "):\n";
  print_system(out, t2.equations);
  out << "removed eps: " << (t2.removed_eps.empty() ? "none" : join(t2.removed_eps, ", ")) << "\n";
  return kExitOk;
}

int cmd_certify(const Flags& fl, std::ostream& out) {
  ProblemFile p = load_problem(fl.input);
  Settings s = resolve(fl, p.opts);
  const Point& z = need_point(p);
  if (!p.box) throw InputError("certify needs a 'box:' line");
  CertifyOptions o;
  o.dual = dual_options(s);
  o.deflation.tol = s.tol;
  CertificationResult c = certify_multiple_root(p.system(), z, *p.box, s.eps_radius, o);
  if (fl.json) {
    Json j;
    j["command"] = "certify";
    j["problem"] = problem_json(p, s);
    j["result"] = to_json(c, p.vars);
    out << j.dump(2) << "\n";
  } else {
    print_header(out, p, "certify");
    out << "status: " << to_string(c.status()) << "\n";
    if (!c.rump.reason.empty()) out << "reason: " << c.rump.reason << "\n";
    out << "multiplicity: " << c.multiplicity() << "\n";
    print_primal(out, c.pair, p.vars);
    out << "removed eps: " << (c.deflated.removed_eps.empty() ? "none" : join(c.deflated.removed_eps, ", ")) << "\n";
    const auto& names = c.deflated.equations.variable_names();
    out << "inclusion V (against Z):\n";
    for (std::size_t i = 0; i < names.size(); ++i)
      out << "  " << names[i] << "  V=" << c.rump.v[i].to_string() << "  Z=" << c.box[i].to_string()
          << (c.rump.interior[i] ? "" : "  (not interior)") << "\n";
  }
  return c.status() == CertStatus::Certified || !fl.strict ? kExitOk : kExitInconclusive;
}

TopologyOptions topology_options(const Settings& s) {
  TopologyOptions t;
  t.dual = dual_options(s);
  t.phi.seed = s.seed;
  return t;
}

void print_tdeg(std::ostream& out, const TdegResult& t, const std::vector<std::string>& names) {
  out << "multiplicity: " << t.pair.multiplicity() << "\n";
  print_primal(out, t.pair, names);
  out << "det J: " << to_string(t.det_j, names) << "\n";
  out << "phi: " << t.phi.phi.to_string(names) << "  (phi[det J] = " << format_double(t.phi.value) << ")\n";
  out << "signature: +" << t.signature.positive << " -" << t.signature.negative << " 0:" << t.signature.zero << "\n";
  out << "tdeg: " << t.tdeg << "\n";
}

int cmd_tdeg(const Flags& fl, std::ostream& out) {
  ProblemFile p = load_problem(fl.input);
  Settings s = resolve(fl, p.opts);
  const Point& z = need_point(p);
  PolynomialSystem f = p.system();
  if (f.size() != f.nvars()) throw InputError("tdeg needs a square system");
  TdegResult t = stage("topology", [&] { return tdeg(f, z, topology_options(s)); });
  if (fl.json) {
    Json j;
    j["command"] = "tdeg";
    j["problem"] = problem_json(p, s);
    j["result"] = to_json(t, p.vars);
    if (t.pair.multiplicity() == 1) j["note"] = "regular root: tdeg is the sign of det J at the point";
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  print_header(out, p, "tdeg");
  print_tdeg(out, t, p.vars);
  if (t.pair.multiplicity() == 1) out << "note: regular root, tdeg is the sign of det J at the point\n";
  return kExitOk;
}

int cmd_branches(const Flags& fl, std::ostream& out) {
  ProblemFile p = load_problem(fl.input);
  Settings s = resolve(fl, p.opts);
  const Point& z = need_point(p);
  PolynomialSystem f = p.system();
  if (f.size() + 1 != f.nvars()) throw InputError("branches needs n - 1 equations in n variables");
  BranchResult b = stage("topology", [&] { return branch_count(f, z, topology_options(s)); });
  if (fl.json) {
    Json j;
    j["command"] = "branches";
    j["problem"] = problem_json(p, s);
    j["result"] = to_json(b, p.vars);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  print_header(out, p, "branches");
  out << "g = det J(f, p): " << to_string(b.g, p.vars) << "\n";
  print_tdeg(out, b.degree, p.vars);
  out << "half-branches at the point: " << b.branches << "\n";
  return kExitOk;
}

int cmd_bench(const Flags& fl, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(fl.input)) throw InputError("bench needs a directory of .sys files");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(fl.input))
    if (entry.is_regular_file() && entry.path().extension() == ".sys") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  Json rows = Json::array();
  bool failed = false;
  std::ostringstream table;
  table << "name                 n    mu  depth  improved    macaulay\n";
  for (const auto& path : files) {
    Json row;
    std::string name = path.stem().string();
    row["name"] = name;
    try {
      ProblemFile p = load_problem(path.string());
      Settings s = resolve(fl, p.opts);
      PolynomialSystem f = p.system();
      if (!p.point || f.size() < f.nvars()) {
        row["skipped"] = "needs a point and at least as many equations as variables";
        rows.push_back(row);
        table << std::left << std::setw(21) << name << "skipped (needs a point and s >= n)\n";
        continue;
      }
      DualSpaceOptions d = dual_options(s);
      PairResult imp = stage("dualspace", [&] { return primal_dual_pair(f, *p.point, d); });
      DualResult mac = stage("dualspace", [&] { return macaulay_dual_basis(f, *p.point, d); });
      const StepInfo& a = imp.stats.final_step();
      const StepInfo& m = mac.stats.final_step();
      row["n"] = f.nvars();
      row["mu"] = imp.pair.multiplicity();
      row["depth"] = imp.pair.dual.nilindex();
      row["improved"] = {a.rows, a.cols};
      row["macaulay"] = {m.rows, m.cols};
      table << std::left << std::setw(21) << name << std::setw(5) << f.nvars() << std::setw(4)
            << imp.pair.multiplicity() << std::setw(7) << imp.pair.dual.nilindex() << std::setw(12) << size_text(a)
            << size_text(m) << "\n";
    } catch (const Error& e) {
      failed = true;
      row["error"] = e.what();
      table << std::left << std::setw(21) << name << "error: " << e.what() << "\n";
      err << name << ": " << e.what() << "\n";
    }
    rows.push_back(row);
  }
  if (fl.json) {
    Json j;
    j["command"] = "bench";
    j["rows"] = std::move(rows);
    out << j.dump(2) << "\n";
  } else {
    out << table.str();
  }
  return failed ? kExitFailure : kExitOk;
}

void add_common(CLI::App* sub, Flags& f, bool dir) {
  sub->add_option("input", f.input, dir ? "directory of .sys problem files" : "problem file")->required();
  sub->add_option("--tol", f.tol, "relative singular-value threshold");
  sub->add_option("--max-depth", f.max_depth, "give up when the dual space grows beyond this degree");
  sub->add_option("--eps-radius", f.eps_radius, "half-width of the box for every eps variable (certify)");
  sub->add_option("--method", f.method, "dual-space method")->check(CLI::IsMember({"macaulay", "integration", "improved"}));
  sub->add_option("--seed", f.seed, "seed for random dual combinations");
  sub->add_flag("--json", f.json, "write a JSON report");
  sub->add_flag("--strict", f.strict, "exit with 2 when certification is inconclusive");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicity structure, deflation and certification of isolated singular roots"};
  app.name("singcert");
  app.require_subcommand(1);
  Flags flags;
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"analyze", "dual space, quotient basis and matrix sizes at the point"},
      {"deflate", "theorem-1 and theorem-2 deflated systems"},
      {"certify", "certify a nearby system with a multiple root inside the box"},
      {"tdeg", "topological degree at the point"},
      {"branches", "number of real half-branches of a curve at a singular point"},
      {"bench", "multiplicity and final matrix sizes for every .sys file in a directory"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, flags, std::string(c.name) == "bench");
    subs.push_back(sub);
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (subs[0]->parsed()) return cmd_analyze(flags, out);
    if (subs[1]->parsed()) return cmd_deflate(flags, out);
    if (subs[2]->parsed()) return cmd_certify(flags, out);
    if (subs[3]->parsed()) return cmd_tdeg(flags, out);
    if (subs[4]->parsed()) return cmd_branches(flags, out);
    return cmd_bench(flags, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << flags.input << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const InputError& e) {
    err << "input error: " << flags.input << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const StageError& e) {
    err << "error in stage '" << e.stage() << "': " << e.what() << "\n";
    return kExitFailure;
  } catch (const InvalidArgument& e) {
    // Unreadable files surface here from load_problem.
    err << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace singcert
