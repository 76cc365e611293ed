#include "singcert/verify.hpp"

namespace singcert {

std::string to_string(CertStatus s) { return s == CertStatus::Certified ? "certified" : "inconclusive"; }

namespace {

DenseMatrix midpoint_matrix(const IntervalMatrix& m) {
  DenseMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).midpoint();
  return out;
}

RumpResult rump_once(const PolynomialSystem& f, const Box& z, const Point& zstar, Preconditioner pre) {
  const std::size_t n = f.nvars();
  RumpResult res;
  res.box = z;
  for (std::size_t i = 0; i < n; ++i) res.centered_box.push_back(z[i] - Interval(zstar[i]));

  IntervalMatrix m = interval_jacobian(f, z);
  DenseMatrix r;
  try {
    r = approx_inverse(pre == Preconditioner::MidpointJacobian ? midpoint_matrix(m) : jacobian_at(f, zstar)).inverse;
  } catch (const SingularMatrix& e) {
    res.reason = std::string("preconditioning Jacobian is singular: ") + e.what();
    res.interior.assign(n, false);
    return res;
  }

  Box fz;
  Box pt(zstar.begin(), zstar.end());
  for (const auto& p : f.polynomials()) fz.push_back(interval_eval(p, pt));
  IntervalMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Interval acc(i == j ? 1.0 : 0.0);
      for (std::size_t k = 0; k < n; ++k) acc -= Interval(r(i, k)) * m(k, j);
      c(i, j) = acc;
    }
  Box cx = c * res.centered_box;
  for (std::size_t i = 0; i < n; ++i) {
    Interval acc = cx[i];
    for (std::size_t k = 0; k < n; ++k) acc -= Interval(r(i, k)) * fz[k];
    res.centered_v.push_back(acc);
    res.v.push_back(acc + Interval(zstar[i]));
  }
  res.interior.resize(n);
  bool all = true;
  for (std::size_t i = 0; i < n; ++i) {
    res.interior[i] = strictly_interior(res.centered_v[i], res.centered_box[i]);
    all = all && res.interior[i];
  }
  if (all) {
    res.status = CertStatus::Certified;
  } else {
    std::string which;
    for (std::size_t i = 0; i < n; ++i)
      if (!res.interior[i]) which += (which.empty() ? "" : ", ") + f.variable_names()[i];
    res.reason = "enclosure not interior in: " + which;
  }
  return res;
}

}  // namespace

RumpResult rump_test(const PolynomialSystem& f, const Box& z, const Point& zstar, const RumpOptions& opts) {
  if (f.size() != f.nvars()) throw DimensionMismatch("the inclusion test needs a square system");
  if (z.size() != f.nvars() || zstar.size() != f.nvars()) throw DimensionMismatch("box or point dimension mismatch");
  for (std::size_t i = 0; i < z.size(); ++i)
    if (!z[i].contains(zstar[i])) throw InvalidArgument("approximate point lies outside the box");
  RumpResult res = rump_once(f, z, zstar, opts.preconditioner);
  if (res.certified() || !opts.inflate_retry) return res;
  Box wide;
  for (const auto& iv : z) {
    double pad = 0.05 * iv.width();
    wide.emplace_back(add_down(iv.lo(), -pad), add_up(iv.hi(), pad));
  }
  RumpResult retry = rump_once(f, wide, zstar, opts.preconditioner);
  retry.inflated = true;
  return retry;
}

CertificationResult certify_multiple_root(const PolynomialSystem& f, const Point& zstar, const Box& z,
                                          double eps_radius, const CertifyOptions& opts) {
  if (z.size() != f.nvars() || zstar.size() != f.nvars()) throw DimensionMismatch("box or point dimension mismatch");
  for (std::size_t i = 0; i < z.size(); ++i)
    if (!z[i].contains(zstar[i])) throw InvalidArgument("approximate point lies outside the box");
  if (!(eps_radius >= 0)) throw InvalidArgument("eps radius must be non-negative");

  CertificationResult out;
  try {
    out.pair = primal_dual_pair(f, zstar, opts.dual).pair;
  } catch (const Error& e) {
    throw StageError("dualspace", e.what());
  }
  try {
    out.deflated = deflated_theorem2(f, out.pair, zstar, opts.deflation);
  } catch (const Error& e) {
    throw StageError("deflate", e.what());
  }
  const auto& sys = out.deflated.equations;
  out.box = z;
  for (std::size_t v = f.nvars(); v < sys.nvars(); ++v) {
    out.box.emplace_back(-eps_radius, eps_radius);
    out.eps_names.push_back(sys.variable_names()[v]);
  }
  try {
    out.rump = rump_test(sys, out.box, out.deflated.root, opts.rump);
  } catch (const Error& e) {
    throw StageError("verify", e.what());
  }
  for (std::size_t v = f.nvars(); v < sys.nvars(); ++v) out.eps_box.push_back(out.rump.v[v]);
  return out;
}

}  // namespace singcert
