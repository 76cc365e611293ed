#include "singcert/deflate.hpp"

#include <algorithm>
#include <numeric>

namespace singcert {

PolynomialSystem dg_system(const PolynomialSystem& g, const DualBasis& d) {
  if (d.elements.empty()) throw InvalidArgument("empty dual basis");
  if (g.nvars() < d.nvars()) throw DimensionMismatch("dual elements have more variables than the system");
  const std::size_t extra = g.nvars() - d.nvars();
  std::vector<DualElement> lifted;
  for (const auto& l : d.elements) lifted.push_back(extra ? l.extended(extra) : l);
  std::vector<Polynomial> eqs;
  for (const auto& gk : g.polynomials())
    for (const auto& l : lifted) eqs.push_back(dual_apply_symbolic(l, gk));
  return PolynomialSystem(std::move(eqs), g.variable_names());
}

DenseMatrix jacobian_at(const PolynomialSystem& f, std::span<const double> pt) {
  if (pt.size() != f.nvars()) throw DimensionMismatch("point dimension does not match the system");
  DenseMatrix j(f.size(), f.nvars());
  for (std::size_t r = 0; r < f.size(); ++r)
    for (std::size_t c = 0; c < f.nvars(); ++c) j(r, c) = f[r].diff(c).eval(pt);
  return j;
}

DenseMatrix dg_jacobian(const PolynomialSystem& f, const DualBasis& d, const Point& zeta) {
  return jacobian_at(dg_system(f, d), zeta);
}

std::vector<std::size_t> select_rows(const PolynomialSystem& f, const DualBasis& d, const Point& zeta, double tol,
                                     double accept) {
  DenseMatrix jt = dg_jacobian(f, d, zeta).transpose();
  std::vector<std::size_t> order(jt.cols());
  std::iota(order.begin(), order.end(), 0);
  auto rows = ordered_pivot_columns(jt, order, accept, tol);
  if (rows.size() < f.nvars())
    throw SingularMatrix("only " + std::to_string(rows.size()) + " independent rows in the deflation Jacobian, need " +
                         std::to_string(f.nvars()) + "; the dual basis or the point is inconsistent");
  return rows;
}

PerturbedSystem perturbed_system(const PolynomialSystem& f, const PrimalDualPair& pair, bool centered) {
  const std::size_t n = f.nvars();
  const std::size_t mu = pair.multiplicity();
  const std::size_t s = f.size();
  if (pair.dual.nvars() != n) throw DimensionMismatch("pair arity does not match the system");
  PerturbedSystem ps;
  ps.nx = n;
  ps.mu = mu;
  ps.centered = centered;
  const std::size_t total = n + s * mu;
  std::vector<std::string> names = f.variable_names();
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t i = 0; i < mu; ++i) {
      std::string nm = "e" + std::to_string(k + 1) + "_" + std::to_string(i + 1);
      ps.eps.push_back({k, i, nm});
      names.push_back(nm);
    }
  std::vector<Polynomial> basis;
  for (std::size_t i = 0; i < mu; ++i) {
    Polynomial b = Polynomial::constant(total, 1.0);
    for (std::size_t v = 0; v < n; ++v) {
      int e = pair.primal[i][v];
      if (e == 0) continue;
      Polynomial lin = Polynomial::variable(total, v);
      if (centered) lin -= Polynomial::constant(total, pair.dual.base[v]);
      b = b * lin.pow(e);
    }
    basis.push_back(std::move(b));
  }
  std::vector<Polynomial> g;
  for (std::size_t k = 0; k < s; ++k) {
    Polynomial gk = f[k].extended(total - n);
    for (std::size_t i = 0; i < mu; ++i) gk += Polynomial::variable(total, ps.eps_variable(k, i)) * basis[i];
    g.push_back(std::move(gk));
  }
  ps.system = PolynomialSystem(std::move(g), std::move(names));
  return ps;
}

DeflatedSystem deflated_theorem1(const PolynomialSystem& f, const DualBasis& d, const Point& zeta, double tol) {
  DeflatedSystem out;
  out.kind = DeflationKind::Theorem1;
  out.selected = select_rows(f, d, zeta, tol);
  PolynomialSystem all = dg_system(f, d);
  std::vector<Polynomial> eqs;
  for (auto r : out.selected) eqs.push_back(all[r]);
  out.equations = PolynomialSystem(std::move(eqs), f.variable_names());
  out.root = zeta;
  return out;
}

DeflatedSystem deflated_theorem2(const PolynomialSystem& f, const PrimalDualPair& pair, const Point& zeta,
                                 const Theorem2Options& opts) {
  DeflatedSystem out;
  out.kind = DeflationKind::Theorem2;
  out.selected = select_rows(f, pair.dual, zeta, opts.tol);
  PerturbedSystem ps = perturbed_system(f, pair, opts.centered);
  PolynomialSystem all = dg_system(ps.system, pair.dual);
  // Row k * mu + i pairs with eps_{k,i}, whose variable index is nx + row.
  std::vector<std::size_t> drop;
  for (auto r : out.selected) {
    drop.push_back(ps.nx + r);
    out.removed_eps.push_back(ps.eps[r].name);
  }
  std::vector<std::string> names;
  for (std::size_t v = 0; v < ps.system.nvars(); ++v)
    if (std::find(drop.begin(), drop.end(), v) == drop.end()) names.push_back(ps.system.variable_names()[v]);
  std::vector<Polynomial> eqs;
  for (const auto& p : all.polynomials()) eqs.push_back(p.without_variables(drop));
  out.equations = PolynomialSystem(std::move(eqs), std::move(names));
  out.root = zeta;
  out.root.resize(out.equations.nvars(), 0.0);
  return out;
}

NewtonResult newton_solve(const PolynomialSystem& f, Point x0, int max_iter, double tol) {
  if (f.size() != f.nvars()) throw DimensionMismatch("Newton iteration needs a square system");
  NewtonResult res;
  res.x = std::move(x0);
  for (int it = 0; it < max_iter; ++it) {
    DenseMatrix j = jacobian_at(f, res.x);
    auto fx = f.eval(res.x);
    DenseVector rhs = Eigen::Map<DenseVector>(fx.data(), fx.size());
    Eigen::FullPivLU<DenseMatrix> lu(j);
    if (!lu.isInvertible()) break;
    DenseVector dx = lu.solve(rhs);
    double xn = 0.0;
    for (std::size_t i = 0; i < res.x.size(); ++i) {
      res.x[i] -= dx(i);
      xn += res.x[i] * res.x[i];
    }
    res.steps.push_back(dx.norm());
    if (dx.norm() <= tol * (1.0 + std::sqrt(xn))) {
      res.converged = true;
      break;
    }
  }
  return res;
}

PolynomialSystem univariate_deflation(const Polynomial& g, std::size_t mu) {
  if (g.nvars() != 1) throw DimensionMismatch("univariate construction needs a one-variable polynomial");
  if (mu < 2) throw InvalidArgument("multiplicity must be at least 2");
  const std::size_t nv = mu;  // x, e1 .. e_{mu-1}
  Polynomial f1 = g.extended(nv - 1);
  Polynomial x = Polynomial::variable(nv, 0);
  for (std::size_t k = 1; k < mu; ++k) f1 += Polynomial::variable(nv, k) * x.pow(static_cast<int>(k - 1));
  std::vector<Polynomial> eqs;
  DualElement dj = DualElement::one(Point(nv, 0.0));
  for (std::size_t j = 0; j < mu; ++j) {
    eqs.push_back(dual_apply_symbolic(dj, f1));
    dj = dual_antiderivative(dj, 0);
  }
  std::vector<std::string> names{"x"};
  for (std::size_t k = 1; k < mu; ++k) names.push_back("e" + std::to_string(k));
  return PolynomialSystem(std::move(eqs), std::move(names));
}

}  // namespace singcert
