#include "singcert/report.hpp"

namespace singcert {

namespace {

Json exponents(const MultiIndex& alpha) {
  Json a = Json::array();
  for (std::size_t i = 0; i < alpha.size(); ++i) a.push_back(alpha[i]);
  return a;
}

Json box_json(const Box& b) {
  Json a = Json::array();
  for (const auto& iv : b) a.push_back(to_json(iv));
  return a;
}

Json point_json(const Point& p) {
  Json a = Json::array();
  for (double v : p) a.push_back(v);
  return a;
}

Json matrix_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json step_json(const StepInfo& s) {
  Json j;
  j["depth"] = s.depth;
  j["rows"] = s.rows;
  j["cols"] = s.cols;
  j["new_elements"] = s.new_elements;
  return j;
}

}  // namespace

std::string monomial_text(const MultiIndex& alpha, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names.at(i);
    if (alpha[i] > 1) s += "^" + std::to_string(alpha[i]);
  }
  return s.empty() ? "1" : s;
}

Json to_json(const Interval& iv) { return Json::array({iv.lo(), iv.hi()}); }

Json to_json(const StepStats& stats) {
  Json j;
  j["method"] = stats.method;
  Json steps = Json::array();
  for (const auto& s : stats.steps) steps.push_back(step_json(s));
  j["steps"] = std::move(steps);
  if (!stats.steps.empty()) {
    j["final_step"] = step_json(stats.final_step());
    j["largest_step"] = step_json(stats.largest_step());
  }
  return j;
}

Json to_json(const PolynomialSystem& f) {
  Json j;
  j["variables"] = f.variable_names();
  Json eqs = Json::array();
  for (const auto& p : f.polynomials()) eqs.push_back(to_string(p, f.variable_names()));
  j["equations"] = std::move(eqs);
  return j;
}

Json to_json(const DualElement& e, const std::vector<std::string>& names) {
  Json j;
  j["text"] = e.to_string(names);
  Json terms = Json::array();
  for (const auto& [alpha, c] : e.terms()) terms.push_back(Json{{"exponent", exponents(alpha)}, {"coef", c}});
  j["terms"] = std::move(terms);
  return j;
}

Json to_json(const DualBasis& d, const std::vector<std::string>& names) {
  Json j;
  j["point"] = point_json(d.base);
  j["multiplicity"] = d.multiplicity();
  j["nilindex"] = d.nilindex();
  j["breadth"] = d.breadth();
  j["hilbert"] = d.hilbert;
  Json elems = Json::array();
  for (const auto& e : d.elements) elems.push_back(to_json(e, names));
  j["dual"] = std::move(elems);
  return j;
}

Json to_json(const PrimalDualPair& pair, const std::vector<std::string>& names) {
  Json j = to_json(pair.dual, names);
  Json primal = Json::array();
  for (const auto& b : pair.primal)
    primal.push_back(Json{{"monomial", monomial_text(b, names)}, {"exponent", exponents(b)}});
  j["primal"] = std::move(primal);
  return j;
}

Json to_json(const DeflatedSystem& d) {
  Json j;
  j["kind"] = d.kind == DeflationKind::Theorem1 ? "theorem1" : "theorem2";
  j["system"] = to_json(d.equations);
  j["selected"] = d.selected;
  if (d.kind == DeflationKind::Theorem2) j["removed_eps"] = d.removed_eps;
  j["root"] = point_json(d.root);
  return j;
}

Json to_json(const RumpResult& r, const std::vector<std::string>& names) {
  Json j;
  j["status"] = to_string(r.status);
  j["variables"] = names;
  j["box"] = box_json(r.box);
  j["v"] = box_json(r.v);
  j["interior"] = r.interior;
  j["inflated"] = r.inflated;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

Json to_json(const CertificationResult& c, const std::vector<std::string>& names) {
  Json j;
  j["status"] = to_string(c.status());
  j["multiplicity"] = c.multiplicity();
  j["pair"] = to_json(c.pair, names);
  j["deflated"] = to_json(c.deflated);
  j["inclusion"] = to_json(c.rump, c.deflated.equations.variable_names());
  Json eps = Json::object();
  for (std::size_t i = 0; i < c.eps_names.size(); ++i) eps[c.eps_names[i]] = to_json(c.eps_box[i]);
  j["eps_box"] = std::move(eps);
  return j;
}

Json to_json(const TdegResult& t, const std::vector<std::string>& names) {
  Json j;
  j["tdeg"] = t.tdeg;
  j["signature"] = {{"positive", t.signature.positive},
                    {"negative", t.signature.negative},
                    {"zero", t.signature.zero}};
  j["multiplicity"] = t.pair.multiplicity();
  j["det_jacobian"] = to_string(t.det_j, names);
  Json phi;
  phi["element"] = to_json(t.phi.phi, names);
  phi["value"] = t.phi.value;
  if (t.phi.basis_index) {
    phi["basis_index"] = *t.phi.basis_index;
    phi["sign"] = t.phi.sign;
  } else {
    phi["random_attempts"] = t.phi.random_attempts;
  }
  phi["seed"] = t.phi.seed;
  j["phi"] = std::move(phi);
  j["quadratic_form"] = matrix_json(t.form.matrix);
  j["pair"] = to_json(t.pair, names);
  j["stats"] = to_json(t.stats);
  return j;
}

Json to_json(const BranchResult& b, const std::vector<std::string>& names) {
  Json j;
  j["half_branches"] = b.branches;
  j["p"] = to_string(b.p, names);
  j["g"] = to_string(b.g, names);
  j["augmented"] = to_json(b.augmented);
  j["degree"] = to_json(b.degree, names);
  return j;
}

}  // namespace singcert
