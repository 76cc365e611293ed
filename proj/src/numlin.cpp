#include "singcert/numlin.hpp"

#include <algorithm>
#include <cmath>

namespace singcert {

namespace {

struct SvdParts {
  DenseVector sigma;
  DenseMatrix v;
  std::size_t rank = 0;
};

SvdParts svd_parts(const DenseMatrix& m, double tol, bool want_v) {
  if (m.cols() == 0) throw InvalidArgument("matrix has no columns");
  if (!(tol > 0)) throw InvalidArgument("tolerance must be positive");
  SvdParts out;
  if (m.rows() == 0) {
    if (want_v) out.v = DenseMatrix::Identity(m.cols(), m.cols());
    return out;
  }
  Eigen::BDCSVD<DenseMatrix> svd(m, want_v ? Eigen::ComputeFullV : 0);
  out.sigma = svd.singularValues();
  double smax = out.sigma.size() ? out.sigma(0) : 0.0;
  if (smax == 0.0) smax = 1.0;
  for (Eigen::Index i = 0; i < out.sigma.size(); ++i)
    if (out.sigma(i) > tol * smax) ++out.rank;
  if (want_v) out.v = svd.matrixV();
  return out;
}

}  // namespace

KernelBasis numerical_kernel(const DenseMatrix& m, double tol) {
  SvdParts p = svd_parts(m, tol, true);
  KernelBasis k;
  k.tol = tol;
  k.rank = p.rank;
  Eigen::Index r = static_cast<Eigen::Index>(p.rank);
  k.vectors = p.v.rightCols(m.cols() - r);
  return k;
}

std::size_t numerical_rank(const DenseMatrix& m, double tol) { return svd_parts(m, tol, false).rank; }

namespace {

std::vector<std::size_t> greedy_pivots(const DenseMatrix& m, const std::vector<std::size_t>& order,
                                       double accept, double tol) {
  if (!(tol > 0)) throw InvalidArgument("tolerance must be positive");
  DenseMatrix r = m;
  double ref = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) ref = std::max(ref, m.col(j).norm());
  std::vector<std::size_t> chosen;
  if (ref == 0.0 || m.rows() == 0) return chosen;
  std::vector<bool> used(m.cols(), false);
  const double threshold = tol * ref;

  while (chosen.size() < static_cast<std::size_t>(std::min(m.rows(), m.cols()))) {
    double best = 0.0;
    for (std::size_t j : order)
      if (!used[j]) best = std::max(best, r.col(j).norm());
    if (best <= threshold) break;
    std::size_t pick = order.size();
    for (std::size_t j : order) {
      if (used[j]) continue;
      if (r.col(j).norm() >= accept * best) {
        pick = j;
        break;
      }
    }
    used[pick] = true;
    chosen.push_back(pick);
    DenseVector q = r.col(pick).normalized();
    // Two projection sweeps keep the residuals orthogonal in floating point.
    for (int sweep = 0; sweep < 2; ++sweep)
      for (Eigen::Index j = 0; j < r.cols(); ++j)
        if (!used[j]) r.col(j) -= q * q.dot(r.col(j));
  }
  return chosen;
}

}  // namespace

std::vector<std::size_t> pivot_columns(const DenseMatrix& m, double tol) {
  std::vector<std::size_t> order(m.cols());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  return greedy_pivots(m, order, 1.0, tol);
}

std::vector<std::size_t> ordered_pivot_columns(const DenseMatrix& m,
                                               const std::vector<std::size_t>& order,
                                               double accept, double tol) {
  if (!(accept > 0 && accept <= 1)) throw InvalidArgument("acceptance ratio must lie in (0, 1]");
  std::vector<bool> seen(m.cols(), false);
  for (std::size_t j : order) {
    if (j >= static_cast<std::size_t>(m.cols())) throw IndexOutOfRange("column index out of range");
    if (seen[j]) throw InvalidArgument("column order lists an index twice");
    seen[j] = true;
  }
  return greedy_pivots(m, order, accept, tol);
}

Signature signature(const DenseMatrix& s, double tol) {
  if (s.rows() != s.cols()) throw DimensionMismatch("signature needs a square matrix");
  Signature out;
  if (s.rows() == 0) return out;
  double scale = s.cwiseAbs().maxCoeff();
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > tol * std::max(scale, 1.0))
    throw InvalidArgument("matrix is not symmetric within tolerance");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(s, Eigen::EigenvaluesOnly);
  const DenseVector& ev = eig.eigenvalues();
  double norm = ev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > tol * norm) ++out.positive;
    else if (ev(i) < -tol * norm) ++out.negative;
    else ++out.zero;
  }
  return out;
}

InverseResult approx_inverse(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse needs a square matrix");
  const Eigen::Index n = m.rows();
  double scale = n ? m.cwiseAbs().maxCoeff() : 0.0;
  if (n && scale == 0.0) throw SingularMatrix("zero matrix");
  DenseMatrix a = m;
  DenseMatrix inv = DenseMatrix::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p;
    double piv = a.col(c).tail(n - c).cwiseAbs().maxCoeff(&p);
    p += c;
    if (piv < 1e-13 * scale) throw SingularMatrix("pivot below 1e-13 * ||M|| in column " + std::to_string(c));
    a.row(c).swap(a.row(p));
    inv.row(c).swap(inv.row(p));
    double d = a(c, c);
    a.row(c) /= d;
    inv.row(c) /= d;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0.0) continue;
      double f = a(r, c);
      a.row(r) -= f * a.row(c);
      inv.row(r) -= f * inv.row(c);
    }
  }
  InverseResult res;
  res.inverse = inv;
  res.residual = n ? (m * inv - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff() : 0.0;
  return res;
}

DenseMatrix orthonormal_row_basis(const DenseMatrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return DenseMatrix(0, m.cols());
  Eigen::BDCSVD<DenseMatrix> svd(m, Eigen::ComputeThinV);
  const DenseVector& s = svd.singularValues();
  double smax = s(0) == 0.0 ? 1.0 : s(0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > tol * smax) ++r;
  return svd.matrixV().leftCols(r).transpose();
}

double subspace_distance(const DenseMatrix& a, const DenseMatrix& b, double tol) {
  if (a.cols() != b.cols()) throw DimensionMismatch("subspaces live in different ambient spaces");
  DenseMatrix qa = orthonormal_row_basis(a, tol);
  DenseMatrix qb = orthonormal_row_basis(b, tol);
  if (qa.rows() != qb.rows()) return 1.0;
  if (qa.rows() == 0) return 0.0;
  DenseMatrix resid = qa - (qa * qb.transpose()) * qb;
  Eigen::JacobiSVD<DenseMatrix> svd(resid);
  return std::min(1.0, svd.singularValues()(0));
}

}  // namespace singcert
