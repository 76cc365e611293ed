#include <doctest.h>

#include <algorithm>
#include <random>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "singcert/deflate.hpp"

using namespace singcert;

namespace {

MultiIndex mi(int a, int b) { return MultiIndex{a, b}; }

double max_coef_diff(const Polynomial& a, const Polynomial& b) {
  double m = 0;
  Polynomial d = a - b;
  for (const auto& [alpha, c] : d.terms()) m = std::max(m, std::abs(c));
  return m;
}

DualBasis basis_of(std::vector<DualElement> elems) {
  DualBasis d;
  d.base = elems.front().base();
  int top = 0;
  for (const auto& e : elems) top = std::max(top, e.degree());
  d.hilbert.assign(static_cast<std::size_t>(top) + 1, 0);
  for (const auto& e : elems)
    for (int t = e.degree(); t <= top; ++t) ++d.hilbert[static_cast<std::size_t>(t)];
  d.elements = std::move(elems);
  return d;
}

DualElement d0(std::initializer_list<std::pair<MultiIndex, double>> terms) {
  DualElement d(Point{0, 0});
  for (const auto& [a, c] : terms) d.add_term(a, c);
  return d;
}

/// Reference dual basis for the three cubics.
DualBasis lvz_basis() {
  return basis_of({d0({{mi(0, 0), 1}}), d0({{mi(1, 0), 1}}), d0({{mi(0, 1), 1}}), d0({{mi(2, 0), 1}}),
                   d0({{mi(1, 1), 1}}), d0({{mi(0, 2), 1}}),
                   d0({{mi(0, 3), 1}, {mi(3, 0), 1}, {mi(2, 1), 1}, {mi(1, 2), -1}})});
}

double det_at(const PolynomialSystem& f, const Point& p) { return jacobian_at(f, p).determinant(); }

double system_scale(const PolynomialSystem& f) {
  double s = 1.0;
  for (const auto& p : f.polynomials())
    for (const auto& [a, c] : p.terms()) s = std::max(s, std::abs(c));
  return s;
}

}  // namespace

TEST_SUITE("deflate") {
  TEST_CASE("dg_system with D = (1) is F") {
    auto f = fixture::running();
    auto d = basis_of({DualElement::one({0, 0})});
    CHECK(dg_system(f, d) == f);
  }

  TEST_CASE("dg_system of the running example") {
    auto f = fixture::running();
    auto pair = primal_dual_pair(f, {0, 0}).pair;
    auto g = dg_system(f, pair.dual);
    REQUIRE(g.size() == 6);
    CHECK(g[0] == f[0]);
    CHECK(max_coef_diff(g[2], fixture::poly("2*x1", fixture::kX12)) <= 1e-12);
    CHECK(g[3] == f[1]);
  }

  TEST_CASE("dg_system of the three cubics has 21 equations") {
    auto g = dg_system(fixture::lvz(), lvz_basis());
    CHECK(g.size() == 21);
    CHECK(max_coef_diff(g[3], fixture::poly("3*x1", fixture::kX12)) == 0.0);
    CHECK(max_coef_diff(g[4], fixture::poly("2*x2", fixture::kX12)) == 0.0);
  }

  TEST_CASE("select_rows gives an admissible minor") {
    auto f = fixture::running();
    auto pair = primal_dual_pair(f, {0, 0}).pair;
    auto rows = select_rows(f, pair.dual, {0, 0});
    REQUIRE(rows.size() == 2);
    DenseMatrix j = dg_jacobian(f, pair.dual, {0, 0});
    DenseMatrix minor(2, 2);
    minor << j.row(rows[0]), j.row(rows[1]);
    CHECK(std::abs(minor.determinant()) > 1e-8);
    // The pair (Lambda1[f1], Lambda3[f1]) is admissible too.
    DenseMatrix alt(2, 2);
    alt << j.row(0), j.row(2);
    CHECK(std::abs(alt.determinant()) > 1e-8);
  }

  TEST_CASE("select_rows at a simple root picks n rows of F") {
    auto f = fixture::system({"x1 + x2", "x1 - x2"}, fixture::kX12);
    auto d = basis_of({DualElement::one({0, 0})});
    auto rows = select_rows(f, d, {0, 0});
    std::sort(rows.begin(), rows.end());
    CHECK(rows == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("rows 4 and 5 of the three-cubics system are admissible") {
    DenseMatrix j = dg_jacobian(fixture::lvz(), lvz_basis(), {0, 0});
    DenseMatrix minor(2, 2);
    minor << j.row(3), j.row(4);
    CHECK(minor.determinant() == doctest::Approx(6.0));
    auto rows = select_rows(fixture::lvz(), lvz_basis(), {0, 0});
    DenseMatrix chosen(2, 2);
    chosen << j.row(rows[0]), j.row(rows[1]);
    CHECK(std::abs(chosen.determinant()) >= 1.0);
  }

  TEST_CASE("theorem 1 on the running example") {
    auto f = fixture::running();
    auto pair = primal_dual_pair(f, {0, 0}).pair;
    auto d = deflated_theorem1(f, pair.dual, {0, 0});
    CHECK(d.kind == DeflationKind::Theorem1);
    CHECK(d.equations.size() == 2);
    CHECK(d.equations.nvars() == 2);
    CHECK(d.equations.max_abs_residual(d.root) <= 1e-12);
    CHECK(std::abs(det_at(d.equations, {0, 0})) > 1e-8);
  }

  TEST_CASE("theorem 1 on the three cubics") {
    auto f = fixture::lvz();
    auto d = deflated_theorem1(f, lvz_basis(), {0, 0});
    CHECK(d.equations.max_abs_residual(d.root) <= 1e-10);
    CHECK(std::abs(det_at(d.equations, {0, 0})) >= 1.0);
    // The computed basis works as well.
    auto pair = primal_dual_pair(f, {0, 0}).pair;
    auto e = deflated_theorem1(f, pair.dual, {0, 0});
    CHECK(std::abs(det_at(e.equations, {0, 0})) >= 1.0);
  }

  TEST_CASE("theorem 1 for x^3 selects d^2[g] = 3x") {
    Polynomial g = Polynomial::monomial(MultiIndex{3});
    PolynomialSystem f({g}, std::vector<std::string>{"x"});
    auto d = basis_of({DualElement::one({0}), DualElement::differential({0}, MultiIndex{1}),
                       DualElement::differential({0}, MultiIndex{2})});
    auto r = deflated_theorem1(f, d, {0});
    REQUIRE(r.equations.size() == 1);
    CHECK(r.equations[0] == Polynomial::monomial(MultiIndex{1}, 3.0));
    CHECK(r.selected == std::vector<std::size_t>{2});
  }

  TEST_CASE("theorem 2 on the perturbed example") {
    auto f = fixture::perturbed();
    Point z{0.01, -0.01};
    DualSpaceOptions o;
    o.tol = 0.04;
    auto pair = primal_dual_pair(f, z, o).pair;
    Theorem2Options t;
    t.centered = false;
    auto d = deflated_theorem2(f, pair, z, t);
    auto names = d.equations.variable_names();
    CHECK(names == std::vector<std::string>{"x1", "x2", "e1_2", "e2_1", "e2_2", "e2_3"});
    CHECK(d.removed_eps == std::vector<std::string>{"e1_1", "e1_3"});
    REQUIRE(d.equations.size() == 6);
    auto p = [&](const char* s) { return parse_polynomial(s, names); };
    auto near = [&](std::size_t i, const char* expected) {
      CAPTURE(i);
      CHECK(max_coef_diff(d.equations[i], p(expected)) <= 1e-3);
    };
    CHECK(max_coef_diff(d.equations[0], p("1.018*x1^2 + 1.071*x1 + (e1_2 - 1.069)*x2")) <= 1e-12);
    near(1, "e1_2 - 0.02023");
    near(2, "0.01723 + 2.036*x1");
    CHECK(max_coef_diff(d.equations[3], p("1.058*x2^2 + (1.024 + e2_3)*x1 + (e2_2 - 1.016)*x2 + e2_1")) <= 1e-12);
    near(4, "0.04217 + 2.116*x2 + e2_2");
    near(5, "e2_3 - 0.03921");
  }

  TEST_CASE("theorem 2 on the cusp has f8 = e2_4") {
    auto f = fixture::cusp();
    Point z{0.01, 0.002};
    DualSpaceOptions o;
    o.tol = 0.04;
    auto pair = primal_dual_pair(f, z, o).pair;
    REQUIRE(pair.multiplicity() == 4);
    for (bool centered : {true, false}) {
      Theorem2Options t;
      t.centered = centered;
      auto d = deflated_theorem2(f, pair, z, t);
      REQUIRE(d.equations.size() == 8);
      CHECK(d.equations.nvars() == 8);
      auto names = d.equations.variable_names();
      CHECK(d.equations[7] == parse_polynomial("e2_4", names));
    }
  }

  TEST_CASE("theorem 2 at a simple root removes every epsilon") {
    auto f = fixture::system({"x1 + x2^2", "x1 - x2"}, fixture::kX12);
    auto pair = primal_dual_pair(f, {0, 0}).pair;
    auto d = deflated_theorem2(f, pair, {0, 0});
    CHECK(d.removed_eps.size() == 2);
    CHECK(d.equations == f);
  }

  TEST_CASE("deflated systems vanish and are regular at their root") {
    struct C {
      PolynomialSystem f;
      Point z;
    };
    std::vector<C> cs{{fixture::running(), {0, 0}}, {fixture::lvz(), {0, 0}}, {fixture::cusp(), {0, 0}},
                      {fixture::quartic_with_g(), {0, 0}}};
    for (const auto& c : cs) {
      auto pair = primal_dual_pair(c.f, c.z).pair;
      auto t1 = deflated_theorem1(c.f, pair.dual, c.z);
      double s1 = system_scale(t1.equations);
      CHECK(t1.equations.max_abs_residual(t1.root) <= 1e-8 * s1);
      CHECK(std::abs(det_at(t1.equations, t1.root)) > 1e-8 * s1);
      CHECK(t1.equations.nvars() == c.f.nvars());
      auto t2 = deflated_theorem2(c.f, pair, c.z);
      double s2 = system_scale(t2.equations);
      CHECK(t2.equations.size() == t2.equations.nvars());
      CHECK(t2.equations.max_abs_residual(t2.root) <= 1e-8 * s2);
      CHECK(std::abs(det_at(t2.equations, t2.root)) > 1e-8 * s2);
    }
  }

  TEST_CASE("epsilon block of the perturbed Jacobian is the identity") {
    for (const auto& f : {fixture::running(), fixture::cusp(), fixture::lvz()}) {
      Point z(2, 0.0);
      auto pair = primal_dual_pair(f, z).pair;
      auto ps = perturbed_system(f, pair);
      auto g = dg_system(ps.system, pair.dual);
      Point root = z;
      root.resize(ps.system.nvars(), 0.0);
      DenseMatrix j = jacobian_at(g, root);
      const std::size_t mu = pair.multiplicity();
      REQUIRE(j.rows() == static_cast<Eigen::Index>(mu * f.size()));
      DenseMatrix block = j.rightCols(static_cast<Eigen::Index>(mu * f.size()));
      CHECK((block - DenseMatrix::Identity(block.rows(), block.cols())).cwiseAbs().maxCoeff() <= 1e-10);
      // Same after removing the columns theorem 2 drops.
      auto t2 = deflated_theorem2(f, pair, z);
      DenseMatrix jt = jacobian_at(t2.equations, t2.root);
      std::size_t kept = ps.eps.size() - t2.removed_eps.size();
      DenseMatrix eps_cols = jt.rightCols(static_cast<Eigen::Index>(kept));
      // Every retained eps column is a unit vector.
      for (Eigen::Index c = 0; c < eps_cols.cols(); ++c) {
        CHECK(eps_cols.col(c).cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(eps_cols.col(c).cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("Newton converges quadratically on theorem-1 systems") {
    std::mt19937_64 rng(53);
    std::normal_distribution<double> g;
    for (const auto& f : {fixture::running(), fixture::lvz(), fixture::cusp()}) {
      Point z{0, 0};
      auto pair = primal_dual_pair(f, z).pair;
      auto t1 = deflated_theorem1(f, pair.dual, z);
      Point delta{g(rng), g(rng)};
      double nd = std::hypot(delta[0], delta[1]);
      Point x{1e-3 * delta[0] / nd, 1e-3 * delta[1] / nd};
      std::vector<double> errs{std::hypot(x[0], x[1])};
      for (int k = 0; k < 3; ++k) {
        auto r = newton_solve(t1.equations, x, 1, 0.0);
        x = r.x;
        errs.push_back(std::hypot(x[0], x[1]));
      }
      for (int k = 0; k < 3; ++k) {
        if (errs[k + 1] < 1e-15) break;
        CHECK(errs[k + 1] / (errs[k] * errs[k]) <= 1e3);
      }
      CHECK(errs.back() <= 1e-12);
    }
  }

  TEST_CASE("univariate construction") {
    for (std::size_t mu = 2; mu <= 5; ++mu) {
      CAPTURE(mu);
      Polynomial g = Polynomial::monomial(MultiIndex{static_cast<int>(mu)});
      auto sys = univariate_deflation(g, mu);
      CHECK(sys.nvars() == mu);
      CHECK(sys.size() == mu);
      Point origin(mu, 0.0);
      CHECK(sys.max_abs_residual(origin) == 0.0);
      // Cofactor expansion of the block layout gives (-1)^(mu+1) * mu * d^mu g(0).
      double want = (mu % 2 == 0 ? -1.0 : 1.0) * static_cast<double>(mu);
      CHECK(det_at(sys, origin) == doctest::Approx(want).epsilon(1e-12));
    }
    Polynomial g = fixture::poly("x^3 + 2*x^4", {"x"});
    auto sys = univariate_deflation(g, 3);
    CHECK(det_at(sys, Point(3, 0.0)) == doctest::Approx(3.0));
  }

  TEST_CASE("errors") {
    auto f = fixture::running();
    auto pair = primal_dual_pair(f, {0, 0}).pair;
    auto one = basis_of({DualElement::one({0, 0})});
    CHECK_THROWS_AS(deflated_theorem1(f, one, {0, 0}), SingularMatrix);
    CHECK_THROWS_AS(univariate_deflation(Polynomial::monomial(MultiIndex{1, 1}), 2), DimensionMismatch);
  }
}
