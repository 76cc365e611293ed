#include "singcert/dualspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace singcert {

const StepInfo& StepStats::final_step() const {
  if (steps.empty()) throw InvalidArgument("no steps recorded");
  return steps.back();
}

const StepInfo& StepStats::largest_step() const {
  if (steps.empty()) throw InvalidArgument("no steps recorded");
  const StepInfo* best = &steps.front();
  for (const auto& s : steps)
    if (s.rows * s.cols > best->rows * best->cols) best = &s;
  return *best;
}

namespace {

// Monomials of degree <= t in ascending order with reverse lookup. The list
// for t - 1 is a prefix of the list for t.
struct MonomialIndex {
  std::vector<MultiIndex> monos;
  std::map<MultiIndex, std::size_t> pos;

  MonomialIndex(std::size_t nvars, int degree) : monos(monomials_up_to(nvars, degree)) {
    for (std::size_t j = 0; j < monos.size(); ++j) pos.emplace(monos[j], j);
  }
  std::size_t size() const { return monos.size(); }
  std::ptrdiff_t find(const MultiIndex& a) const {
    auto it = pos.find(a);
    return it == pos.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
  }
};

DenseMatrix to_dense(const std::vector<DualElement>& elems, const MonomialIndex& idx) {
  DenseMatrix m = DenseMatrix::Zero(elems.size(), idx.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& [alpha, c] : elems[i].terms()) {
      auto j = idx.find(alpha);
      if (j < 0) throw InvalidArgument("dual element exceeds the degree of the monomial index");
      m(i, j) = c;
    }
  return m;
}

DualElement from_row(const DenseVector& row, const MonomialIndex& idx, const Point& base) {
  double scale = row.cwiseAbs().maxCoeff();
  DualElement d(base);
  for (Eigen::Index j = 0; j < row.size(); ++j)
    if (std::abs(row(j)) > 1e-13 * scale) d.add_term(idx.monos[j], row(j));
  return d;
}

std::vector<DualElement> from_rows(const DenseMatrix& m, const MonomialIndex& idx, const Point& base) {
  std::vector<DualElement> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(from_row(m.row(i).transpose(), idx, base));
  return out;
}

// Shared per-problem data: Taylor coefficients of each f_i at zeta.
struct Context {
  std::size_t n;
  Point zeta;
  std::vector<Polynomial> taylor;
  double tol;
  double accept;

  Context(const PolynomialSystem& f, const Point& z, const DualSpaceOptions& opts)
      : n(f.nvars()), zeta(z), tol(opts.tol), accept(opts.primal_accept) {
    if (z.size() != f.nvars()) throw DimensionMismatch("point dimension does not match the system");
    if (!(opts.tol > 0)) throw InvalidArgument("tolerance must be positive");
    if (opts.max_depth < 0) throw InvalidArgument("max_depth must be non-negative");
    double resid = f.max_abs_residual(z);
    double rtol = opts.residual_tol.value_or(std::max(1e-6, 10.0 * resid));
    if (resid > rtol)
      throw NotIsolated("the system does not vanish at the given point (residual " + format_double(resid) + ")");
    for (const auto& p : f.polynomials()) taylor.push_back(p.taylor_shift(z));
  }

  // Coefficients of f_i in powers of (x - zeta), laid out over idx.
  DenseVector taylor_vector(std::size_t i, const MonomialIndex& idx) const {
    DenseVector v = DenseVector::Zero(idx.size());
    for (const auto& [alpha, c] : taylor[i].terms()) {
      auto j = idx.find(alpha);
      if (j >= 0) v(j) = c;
    }
    return v;
  }
};

// Greedy primal selection over the columns of e outside `primal`, scanning
// monomials by increasing degree; then reduces e to identity on the chosen
// columns.
std::vector<std::size_t> extend_primal(DenseMatrix& e, const MonomialIndex& idx,
                                       const std::vector<MultiIndex>& primal, const Context& ctx) {
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (std::find(primal.begin(), primal.end(), idx.monos[j]) == primal.end()) order.push_back(j);
  auto picks = ordered_pivot_columns(e, order, ctx.accept, ctx.tol);
  if (picks.size() < static_cast<std::size_t>(e.rows()))
    throw SingularMatrix("primal selection found " + std::to_string(picks.size()) + " independent columns, needed " +
                         std::to_string(e.rows()) + "; the tolerance is inconsistent with the data");
  DenseMatrix g(e.rows(), e.rows());
  for (Eigen::Index k = 0; k < e.rows(); ++k) g.col(k) = e.col(picks[k]);
  e = approx_inverse(g).inverse * e;
  for (Eigen::Index k = 0; k < e.rows(); ++k) {
    for (Eigen::Index r = 0; r < e.rows(); ++r) e(r, picks[k]) = (r == k) ? 1.0 : 0.0;
  }
  return picks;
}

struct StepOutcome {
  DenseMatrix image;  // rows over the degree-t monomial index
  std::size_t rows = 0;
  std::size_t cols = 0;
};

// Drops zero rows and rows repeating an earlier one (entrywise within
// `tol`). Rows are not rescaled: only literal repeats are merged.
std::vector<DenseVector> distinct_rows(const DenseMatrix& m, double tol) {
  std::vector<DenseVector> out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    DenseVector row = m.row(r).transpose();
    if (row.size() == 0 || row.cwiseAbs().maxCoeff() <= tol) continue;
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const DenseVector& o) { return (o - row).cwiseAbs().maxCoeff() <= tol; });
    if (!dup) out.push_back(std::move(row));
  }
  return out;
}

// One integration step: candidates are the antiderivatives of the
// truncations of every element of `prev`; constraints are closedness under
// derivation, annihilation of f, and, when `primal` is given, vanishing on
// the primal monomials.
StepOutcome integration_step(const Context& ctx, const DenseMatrix& prev, int t,
                             const std::vector<MultiIndex>* primal) {
  const std::size_t n = ctx.n;
  MonomialIndex idx(n, t);
  MonomialIndex prev_idx(n, t - 1);
  const std::size_t mu = prev.rows();
  const std::size_t ncand = mu * n;

  // Candidate coefficient matrix, candidate (i, k) at row i * n + k.
  DenseMatrix cand = DenseMatrix::Zero(ncand, idx.size());
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < prev_idx.size(); ++j) {
        double c = prev(i, j);
        if (c == 0.0) continue;
        const MultiIndex& a = prev_idx.monos[j];
        bool truncated = false;
        for (std::size_t v = k + 1; v < n; ++v) truncated = truncated || a[v] > 0;
        if (truncated) continue;
        cand(i * n + k, idx.find(a.with(k, a[k] + 1))) += c;
      }

  // Which candidates stay as unknowns.
  std::vector<bool> live(ncand, true);
  std::vector<DenseVector> extra_rows;
  if (primal) {
    double scale = cand.cwiseAbs().maxCoeff();
    double thr = 1e-10 * std::max(scale, 1e-300);
    // A constraint touching a single candidate just zeroes its coefficient:
    // drop that column instead of adding a row.
    for (const auto& beta : *primal) {
      auto col = idx.find(beta);
      std::vector<std::size_t> hits;
      for (std::size_t c = 0; c < ncand; ++c)
        if (std::abs(cand(c, col)) > thr) hits.push_back(c);
      if (hits.size() == 1) live[hits[0]] = false;
      else if (hits.size() > 1) extra_rows.push_back(cand.col(col));
    }
  }
  std::vector<std::size_t> live_cols;
  for (std::size_t c = 0; c < ncand; ++c)
    if (live[c]) live_cols.push_back(c);

  auto restrict_cols = [&](const DenseMatrix& full) {
    DenseMatrix r(full.rows(), live_cols.size());
    for (std::size_t j = 0; j < live_cols.size(); ++j) r.col(j) = full.col(live_cols[j]);
    return r;
  };

  // Condition (i): for k < l, sum_i lambda_ik d_l(L_i) - lambda_il d_k(L_i) = 0.
  std::vector<DenseMatrix> diffs(n, DenseMatrix::Zero(mu, prev_idx.size()));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < prev_idx.size(); ++j) {
      const MultiIndex& a = prev_idx.monos[j];
      if (a[k] == 0) continue;
      diffs[k].col(prev_idx.find(a.with(k, a[k] - 1))) += prev.col(j);
    }
  DenseMatrix closed(0, ncand);
  if (n > 1) {
    closed = DenseMatrix::Zero(n * (n - 1) / 2 * prev_idx.size(), ncand);
    Eigen::Index row0 = 0;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k + 1; l < n; ++l) {
        for (std::size_t i = 0; i < mu; ++i) {
          closed.block(row0, i * n + k, prev_idx.size(), 1) += diffs[l].row(i).transpose();
          closed.block(row0, i * n + l, prev_idx.size(), 1) -= diffs[k].row(i).transpose();
        }
        row0 += prev_idx.size();
      }
  }
  DenseMatrix closed_live = restrict_cols(closed);
  double entry_scale = std::max(1.0, closed_live.size() ? closed_live.cwiseAbs().maxCoeff() : 0.0);
  auto closed_rows = distinct_rows(closed_live, 1e-12 * entry_scale);

  // Condition (ii): annihilation of every f_j.
  DenseMatrix annih(ctx.taylor.size(), ncand);
  for (std::size_t j = 0; j < ctx.taylor.size(); ++j) annih.row(j) = (cand * ctx.taylor_vector(j, idx)).transpose();
  DenseMatrix annih_live = restrict_cols(annih);

  DenseMatrix extra(extra_rows.size(), ncand);
  for (std::size_t r = 0; r < extra_rows.size(); ++r) extra.row(r) = extra_rows[r].transpose();
  DenseMatrix extra_live = restrict_cols(extra);

  const Eigen::Index nrows = closed_rows.size() + annih_live.rows() + extra_live.rows();
  DenseMatrix a(nrows, live_cols.size());
  Eigen::Index r = 0;
  for (const auto& row : closed_rows) a.row(r++) = row.transpose();
  a.middleRows(r, annih_live.rows()) = annih_live;
  r += annih_live.rows();
  a.middleRows(r, extra_live.rows()) = extra_live;

  StepOutcome out;
  out.rows = a.rows();
  out.cols = a.cols();
  if (live_cols.empty()) {
    out.image = DenseMatrix(0, idx.size());
    return out;
  }
  KernelBasis kb = numerical_kernel(a, ctx.tol);
  DenseMatrix cand_live(live_cols.size(), idx.size());
  for (std::size_t j = 0; j < live_cols.size(); ++j) cand_live.row(j) = cand.row(live_cols[j]);
  DenseMatrix image = kb.vectors.transpose() * cand_live;
  out.image = orthonormal_row_basis(image, ctx.tol);
  if (out.image.rows() == 0) out.image = DenseMatrix(0, idx.size());
  return out;
}

// Pads rows laid out over the degree-(t-1) index to the degree-t index.
DenseMatrix widen(const DenseMatrix& m, std::size_t cols) {
  DenseMatrix w = DenseMatrix::Zero(m.rows(), cols);
  w.leftCols(m.cols()) = m;
  return w;
}

void check_depth(int t, const DualSpaceOptions& opts) {
  if (t > opts.max_depth)
    throw NotIsolated("dual space still growing at depth " + std::to_string(t) + " (max_depth " +
                      std::to_string(opts.max_depth) + "); the point is not isolated or too inaccurate");
}

DualBasis make_basis(const Context& ctx, const DenseMatrix& m, int depth, std::vector<std::size_t> hilbert) {
  DualBasis b;
  b.base = ctx.zeta;
  MonomialIndex idx(ctx.n, depth);
  b.elements = from_rows(m.leftCols(idx.size()), idx, ctx.zeta);
  b.hilbert = std::move(hilbert);
  return b;
}

// Improved integration / primal-tracking Macaulay share this driver: `step`
// returns the new elements (vanishing on the current primal set) and the
// matrix size.
template <class StepFn>
PairResult run_primal_dual(const Context& ctx, const DualSpaceOptions& opts, const std::string& method,
                           StepFn&& step) {
  PairResult res;
  res.stats.method = method;
  std::vector<MultiIndex> primal{MultiIndex(ctx.n)};
  DenseMatrix d = DenseMatrix::Ones(1, 1);
  std::vector<std::size_t> hilbert{1};
  int depth = 0;
  for (int t = 1;; ++t) {
    MonomialIndex idx(ctx.n, t);
    StepOutcome so = step(d, t, primal);
    std::size_t fresh = so.image.rows();
    res.stats.steps.push_back({t, so.rows, so.cols, fresh});
    if (fresh == 0) break;
    check_depth(t, opts);
    DenseMatrix e = so.image;
    auto picks = extend_primal(e, idx, primal, ctx);
    for (auto p : picks) primal.push_back(idx.monos[p]);
    DenseMatrix grown(d.rows() + e.rows(), idx.size());
    grown << widen(d, idx.size()), e;
    d = std::move(grown);
    hilbert.push_back(d.rows());
    depth = t;
    if (opts.stop_depth > 0 && t >= opts.stop_depth) break;
  }
  DualBasis tri = make_basis(ctx, d, depth, hilbert);
  res.pair = diagonalize_dual(tri, primal);
  if (opts.prune_below_tol)
    for (auto& e : res.pair.dual.elements) e = e.pruned(ctx.tol * e.max_abs_coefficient());
  return res;
}

StepOutcome macaulay_step(const Context& ctx, int t, const std::vector<MultiIndex>* primal) {
  MonomialIndex idx(ctx.n, t);
  auto shifts = monomials_up_to(ctx.n, t - 1);
  std::vector<DenseVector> tv;
  for (std::size_t i = 0; i < ctx.taylor.size(); ++i) tv.push_back(ctx.taylor_vector(i, idx));

  std::vector<std::size_t> live_cols;
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (!primal || std::find(primal->begin(), primal->end(), idx.monos[j]) == primal->end()) live_cols.push_back(j);

  DenseMatrix full = DenseMatrix::Zero(shifts.size() * ctx.taylor.size(), idx.size());
  Eigen::Index r = 0;
  for (const auto& beta : shifts)
    for (std::size_t i = 0; i < ctx.taylor.size(); ++i, ++r)
      for (const auto& [gamma, c] : ctx.taylor[i].terms()) {
        if (gamma.degree() + beta.degree() > t) continue;
        full(r, idx.find(gamma + beta)) = c;
      }
  DenseMatrix a(full.rows(), live_cols.size());
  for (std::size_t j = 0; j < live_cols.size(); ++j) a.col(j) = full.col(live_cols[j]);

  StepOutcome out;
  out.rows = a.rows();
  out.cols = a.cols();
  if (live_cols.empty()) {
    out.image = DenseMatrix(0, idx.size());
    return out;
  }
  KernelBasis kb = numerical_kernel(a, ctx.tol);
  out.image = DenseMatrix::Zero(kb.dim(), idx.size());
  for (std::size_t j = 0; j < live_cols.size(); ++j) out.image.col(live_cols[j]) = kb.vectors.row(j).transpose();
  return out;
}

}  // namespace

DenseMatrix DualBasis::coefficient_matrix() const {
  MonomialIndex idx(nvars(), std::max(nilindex(), 0));
  return to_dense(elements, idx);
}

std::vector<MultiIndex> PrimalDualPair::support() const {
  std::vector<MultiIndex> out = primal;
  for (const auto& m : monomials_up_to(dual.nvars(), std::max(dual.nilindex(), 0)))
    if (std::find(primal.begin(), primal.end(), m) == primal.end()) out.push_back(m);
  return out;
}

DenseMatrix PrimalDualPair::coefficient_matrix() const {
  auto sup = support();
  DenseMatrix m(dual.elements.size(), sup.size());
  for (std::size_t i = 0; i < dual.elements.size(); ++i)
    for (std::size_t j = 0; j < sup.size(); ++j) m(i, j) = dual.elements[i].coefficient(sup[j]);
  return m;
}

DualResult macaulay_dual_basis(const PolynomialSystem& f, const Point& zeta, const DualSpaceOptions& opts) {
  if (opts.macaulay_primal) {
    PairResult pr = macaulay_primal_dual_pair(f, zeta, opts);
    return {pr.pair.dual, pr.stats};
  }
  Context ctx(f, zeta, opts);
  DualResult res;
  res.stats.method = "macaulay";
  DenseMatrix d = DenseMatrix::Ones(1, 1);
  std::vector<std::size_t> hilbert{1};
  int depth = 0;
  for (int t = 1;; ++t) {
    StepOutcome so = macaulay_step(ctx, t, nullptr);
    std::size_t dim = so.image.rows();
    std::size_t fresh = dim > hilbert.back() ? dim - hilbert.back() : 0;
    res.stats.steps.push_back({t, so.rows, so.cols, fresh});
    if (dim <= hilbert.back()) break;
    check_depth(t, opts);
    d = so.image;
    hilbert.push_back(dim);
    depth = t;
    if (opts.stop_depth > 0 && t >= opts.stop_depth) break;
  }
  res.basis = make_basis(ctx, d, depth, hilbert);
  return res;
}

PairResult macaulay_primal_dual_pair(const PolynomialSystem& f, const Point& zeta, const DualSpaceOptions& opts) {
  Context ctx(f, zeta, opts);
  return run_primal_dual(ctx, opts, "macaulay", [&](const DenseMatrix&, int t, const std::vector<MultiIndex>& primal) {
    return macaulay_step(ctx, t, &primal);
  });
}

DualResult integration_dual_basis(const PolynomialSystem& f, const Point& zeta, const DualSpaceOptions& opts) {
  Context ctx(f, zeta, opts);
  DualResult res;
  res.stats.method = "integration";
  DenseMatrix d = DenseMatrix::Ones(1, 1);
  std::vector<std::size_t> hilbert{1};
  int depth = 0;
  for (int t = 1;; ++t) {
    StepOutcome so = integration_step(ctx, d, t, nullptr);
    std::size_t dim = 1 + so.image.rows();
    std::size_t fresh = dim > hilbert.back() ? dim - hilbert.back() : 0;
    res.stats.steps.push_back({t, so.rows, so.cols, fresh});
    if (dim <= hilbert.back()) break;
    check_depth(t, opts);
    MonomialIndex idx(ctx.n, t);
    DenseMatrix next = DenseMatrix::Zero(dim, idx.size());
    next(0, 0) = 1.0;
    next.bottomRows(so.image.rows()) = so.image;
    d = std::move(next);
    hilbert.push_back(dim);
    depth = t;
    if (opts.stop_depth > 0 && t >= opts.stop_depth) break;
  }
  res.basis = make_basis(ctx, d, depth, hilbert);
  return res;
}

PairResult primal_dual_pair(const PolynomialSystem& f, const Point& zeta, const DualSpaceOptions& opts) {
  Context ctx(f, zeta, opts);
  return run_primal_dual(ctx, opts, "improved", [&](const DenseMatrix& d, int t, const std::vector<MultiIndex>& primal) {
    return integration_step(ctx, d, t, &primal);
  });
}

PrimalDualPair diagonalize_dual(const DualBasis& d, const std::vector<MultiIndex>& primal) {
  if (primal.size() != d.elements.size())
    throw DimensionMismatch("primal basis size differs from the dual basis size");
  const std::size_t mu = primal.size();
  int deg = std::max(d.nilindex(), 0);
  for (const auto& b : primal) {
    if (b.size() != d.nvars()) throw DimensionMismatch("primal exponent arity mismatch");
    deg = std::max(deg, b.degree());
  }
  MonomialIndex idx(d.nvars(), deg);
  DenseMatrix m = to_dense(d.elements, idx);
  DenseMatrix g(mu, mu);
  std::vector<std::size_t> cols;
  for (std::size_t k = 0; k < mu; ++k) {
    cols.push_back(idx.find(primal[k]));
    g.col(k) = m.col(cols.back());
  }
  DenseMatrix diag = approx_inverse(g).inverse * m;
  for (std::size_t k = 0; k < mu; ++k)
    for (std::size_t r = 0; r < mu; ++r) diag(r, cols[k]) = (r == k) ? 1.0 : 0.0;
  PrimalDualPair pair;
  pair.primal = primal;
  pair.dual.base = d.base;
  pair.dual.hilbert = d.hilbert;
  for (Eigen::Index r = 0; r < diag.rows(); ++r) {
    DualElement e(d.base);
    for (Eigen::Index j = 0; j < diag.cols(); ++j)
      if (std::abs(diag(r, j)) > 1e-12) e.add_term(idx.monos[j], diag(r, j));
    pair.dual.elements.push_back(std::move(e));
  }
  return pair;
}

}  // namespace singcert
