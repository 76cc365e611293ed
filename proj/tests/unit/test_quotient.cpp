#include <doctest.h>

#include <random>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "singcert/quotient.hpp"

using namespace singcert;

namespace {

double max_coef_diff(const Polynomial& a, const Polynomial& b) {
  double m = 0;
  Polynomial d = a - b;
  for (const auto& [alpha, c] : d.terms()) m = std::max(m, std::abs(c));
  return m;
}

PrimalDualPair pair_of(const PolynomialSystem& f) { return primal_dual_pair(f, Point(f.nvars(), 0.0)).pair; }

}  // namespace

TEST_SUITE("quotient") {
  TEST_CASE("primal monomials are their own normal form") {
    for (const auto& f : {fixture::running(), fixture::quartic_with_g(), fixture::lvz(), fixture::cusp()}) {
      auto pair = pair_of(f);
      for (std::size_t i = 0; i < pair.multiplicity(); ++i) {
        Polynomial b = quotient_basis_element(pair, i);
        CHECK(max_coef_diff(normal_form(b, pair), b) <= 1e-10);
      }
    }
  }

  TEST_CASE("quartic pair: NF(y^4)") {
    auto pair = pair_of(fixture::quartic_with_g());
    auto nf = normal_form(fixture::poly("y^4", fixture::kXY), pair);
    CHECK(max_coef_diff(nf, fixture::poly("0.375*y^3 - 1.125*x^2*y", fixture::kXY)) <= 1e-8);
  }

  TEST_CASE("normal forms agree with brute-force ideal reduction") {
    auto f = fixture::running();
    auto pair = pair_of(f);
    std::mt19937_64 rng(41);
    std::vector<Polynomial> gs{fixture::poly("x1*x2^2", fixture::kX12), fixture::poly("x2^2", fixture::kX12),
                               fixture::poly("x1^2 - 3*x1*x2", fixture::kX12)};
    for (int k = 0; k < 10; ++k) gs.push_back(oracle::random_int_poly(rng, 2, 4, 6));
    for (const auto& g : gs) {
      double residual = 0;
      auto want = oracle::brute_force_nf(g, f.polynomials(), pair.primal, pair.dual.nilindex(), &residual);
      CHECK(residual <= 1e-9);
      auto got = normal_form_coords(g, pair);
      for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-8);
    }
    // Degree 3 exceeds the nilindex: the normal form vanishes.
    auto z = normal_form_coords(gs[0], pair);
    for (double c : z) CHECK(c == 0.0);
  }

  TEST_CASE("simple root has the 1x1 table [1]") {
    auto pair = pair_of(fixture::system({"x1", "x2"}, fixture::kX12));
    auto t = mult_table(pair);
    REQUIRE(t.size() == 1);
    CHECK(t.coords[0][0] == std::vector<double>{1.0});
  }

  TEST_CASE("quartic pair multiplication table") {
    auto pair = pair_of(fixture::quartic_with_g());
    std::vector<MultiIndex> b{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}, {0, 3}, {1, 2}, {2, 1}};
    REQUIRE(pair.primal == b);
    auto t = mult_table(pair);
    auto want = fixture::quartic_table();
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j) {
        CAPTURE(i);
        CAPTURE(j);
        CHECK(max_coef_diff(t.entries[i][j], fixture::poly(want[i][j], fixture::kXY)) <= 1e-6);
      }
  }

  TEST_CASE("monomial ideal table") {
    auto pair = pair_of(fixture::system({"x1^2", "x2^2"}, fixture::kX12));
    std::vector<MultiIndex> b{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    REQUIRE(pair.primal == b);
    auto t = mult_table(pair);
    CHECK(max_coef_diff(t.entries[1][2], fixture::poly("x1*x2", fixture::kX12)) == 0.0);
    for (std::size_t j = 0; j < 4; ++j) {
      if (j != 0 && j != 1) CHECK(t.entries[2][j].is_zero());  // x1 * (x1, x1x2) -> 0
      CHECK((j == 0 || t.entries[3][j].is_zero()));
    }
  }

  TEST_CASE("projection, linearity and annihilation") {
    std::mt19937_64 rng(43);
    for (const auto& f : {fixture::running(), fixture::quartic_with_g(), fixture::cusp()}) {
      auto pair = pair_of(f);
      const std::size_t n = f.nvars();
      for (int k = 0; k < 10; ++k) {
        Polynomial g = oracle::random_int_poly(rng, n, 5, 6);
        Polynomial h = oracle::random_int_poly(rng, n, 5, 6);
        Polynomial ng = normal_form(g, pair);
        CHECK(max_coef_diff(normal_form(ng, pair), ng) <= 1e-8);
        double a = 1.5, c = -0.25;
        auto lhs = normal_form_coords(a * g + c * h, pair);
        auto rg = normal_form_coords(g, pair);
        auto rh = normal_form_coords(h, pair);
        for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - (a * rg[i] + c * rh[i])) <= 1e-8);
      }
      const int top = pair.dual.nilindex();
      for (const auto& fi : f.polynomials()) {
        double scale = 1.0;
        for (const auto& [alpha, c] : fi.terms()) scale = std::max(scale, std::abs(c));
        for (const auto& beta : monomials_up_to(n, top + 1)) {
          if (beta.degree() + fi.degree() > top + 1) continue;
          for (double c : normal_form_coords(poly_mul(Polynomial::monomial(beta), fi), pair))
            CHECK(std::abs(c) <= 1e-6 * scale);
        }
      }
    }
  }

  TEST_CASE("table is symmetric and the unit row reproduces the basis") {
    for (const auto& f : {fixture::running(), fixture::quartic_with_g(), fixture::lvz()}) {
      auto pair = pair_of(f);
      auto t = mult_table(pair);
      const std::size_t mu = t.size();
      for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
          for (std::size_t k = 0; k < mu; ++k) CHECK(std::abs(t.coords[i][j][k] - t.coords[j][i][k]) <= 1e-10);
          CHECK(std::abs(t.coords[0][j][i] - (i == j ? 1.0 : 0.0)) <= 1e-10);
        }
    }
  }
}
