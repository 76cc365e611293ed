#include "singcert/topology.hpp"

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "singcert/deflate.hpp"

namespace singcert {

namespace {

// Determinant of the minor on rows [row, n) and the columns flagged in `cols`.
Polynomial minor_det(const std::vector<std::vector<Polynomial>>& jac, std::size_t row, std::uint64_t cols,
                     std::map<std::uint64_t, Polynomial>& memo) {
  const std::size_t n = jac.size();
  const std::size_t nv = n ? jac[0].size() : 0;
  if (row == n) return Polynomial::constant(nv, 1.0);
  if (auto it = memo.find(cols); it != memo.end()) return it->second;
  Polynomial acc(nv);
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    if (!(cols & bit)) continue;
    if (!jac[row][c].is_zero()) {
      Polynomial term = jac[row][c] * minor_det(jac, row + 1, cols & ~bit, memo);
      if (sign > 0) acc += term;
      else acc -= term;
    }
    sign = -sign;
  }
  memo.emplace(cols, acc);
  return acc;
}

}  // namespace

Polynomial jacobian_determinant(const PolynomialSystem& f) {
  if (f.size() != f.nvars()) throw DimensionMismatch("the Jacobian determinant needs a square system");
  if (f.size() > 30) throw InvalidArgument("system too large for cofactor expansion");
  std::map<std::uint64_t, Polynomial> memo;
  const std::uint64_t all = (std::uint64_t{1} << f.size()) - 1;
  return minor_det(f.jacobian(), 0, all, memo);
}

DualElement random_dual_combination(const PrimalDualPair& pair, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  DualElement out(pair.dual.base);
  for (const auto& e : pair.dual.elements) {
    double c = coef(rng);
    for (const auto& [alpha, v] : e.terms()) out.add_term(alpha, c * v);
  }
  return out;
}

PhiChoice choose_phi(const PrimalDualPair& pair, const Polynomial& det_j, const PhiOptions& opts) {
  PhiChoice out;
  out.seed = opts.seed;
  const auto& elems = pair.dual.elements;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    double v = dual_apply(elems[i], det_j);
    if (std::abs(v) > opts.tol) {
      out.basis_index = i;
      out.sign = v > 0 ? 1 : -1;
      out.phi = v > 0 ? elems[i] : DualElement(pair.dual.base) - elems[i];
      out.value = std::abs(v);
      return out;
    }
  }
  for (int k = 0; k < opts.max_random_attempts; ++k) {
    DualElement phi = random_dual_combination(pair, opts.seed + static_cast<std::uint64_t>(k));
    double v = dual_apply(phi, det_j);
    if (std::abs(v) > opts.tol) {
      out.random_attempts = k + 1;
      out.phi = v > 0 ? phi : DualElement(pair.dual.base) - phi;
      out.value = std::abs(v);
      return out;
    }
  }
  throw InvalidArgument("no dual element is nonzero on det J; the dual basis is inconsistent with the system");
}

QuadraticForm quadratic_form(const PrimalDualPair& pair, const MultiplicationTable& table, const DualElement& phi) {
  const std::size_t mu = pair.multiplicity();
  if (table.size() != mu) throw DimensionMismatch("multiplication table does not match the pair");
  // Phi[b_k] with b_k = (x - zeta)^beta_k is the coefficient of d^beta_k.
  std::vector<double> phi_b(mu);
  for (std::size_t k = 0; k < mu; ++k) phi_b[k] = phi.coefficient(pair.primal[k]);
  QuadraticForm q{phi, DenseMatrix::Zero(mu, mu)};
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t j = 0; j < mu; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < mu; ++k) s += table.coords[i][j][k] * phi_b[k];
      q.matrix(i, j) = s;
    }
  return q;
}

TdegResult tdeg(const PolynomialSystem& f, const Point& zeta, const TopologyOptions& opts) {
  if (f.size() != f.nvars()) throw DimensionMismatch("tdeg needs a square system");
  TdegResult out;
  PairResult pr = primal_dual_pair(f, zeta, opts.dual);
  out.pair = std::move(pr.pair);
  out.stats = std::move(pr.stats);
  out.det_j = jacobian_determinant(f);
  out.phi = choose_phi(out.pair, out.det_j, opts.phi);
  MultiplicationTable table = mult_table(out.pair);
  out.form = quadratic_form(out.pair, table, out.phi.phi);
  out.signature = signature(out.form.matrix, opts.signature_tol);
  out.tdeg = static_cast<int>(out.signature.positive) - static_cast<int>(out.signature.negative);
  return out;
}

BranchResult branch_count(const PolynomialSystem& f, const Point& zeta, const TopologyOptions& opts) {
  const std::size_t n = f.nvars();
  if (n < 2 || f.size() != n - 1) throw DimensionMismatch("a curve needs n - 1 equations in n variables");
  if (zeta.size() != n) throw DimensionMismatch("point dimension does not match the curve");

  double resid_tol = opts.dual.residual_tol.value_or(1e-6);
  if (f.max_abs_residual(zeta) > resid_tol) throw InvalidArgument("the point is not on the curve");
  if (numerical_rank(jacobian_at(f, zeta), opts.dual.tol) == n - 1)
    throw InvalidArgument("the curve is smooth at the point; branch counting needs a singular point");

  BranchResult out;
  out.p = Polynomial(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial d = Polynomial::variable(n, i) - Polynomial::constant(n, zeta[i]);
    out.p += d * d;
  }
  std::vector<Polynomial> fp = f.polynomials();
  fp.push_back(out.p);
  out.g = jacobian_determinant(PolynomialSystem(fp, f.variable_names()));
  std::vector<Polynomial> fg = f.polynomials();
  fg.push_back(out.g);
  out.augmented = PolynomialSystem(fg, f.variable_names());
  out.degree = tdeg(out.augmented, zeta, opts);
  out.branches = 2 * out.degree.tdeg;
  return out;
}

}  // namespace singcert
