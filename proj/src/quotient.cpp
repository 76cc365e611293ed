#include "singcert/quotient.hpp"

namespace singcert {

namespace {

void check_arity(const Polynomial& g, const PrimalDualPair& pair) {
  if (g.nvars() != pair.dual.nvars()) throw DimensionMismatch("polynomial arity does not match the pair");
}

// Coordinates from Taylor coefficients at zeta. Terms of degree above the
// nilindex lie in the primary component and are skipped.
std::vector<double> coords_from_taylor(const Polynomial& shifted, const PrimalDualPair& pair) {
  const int n_max = pair.dual.nilindex();
  std::vector<double> out;
  out.reserve(pair.multiplicity());
  for (const auto& lambda : pair.dual.elements) {
    double acc = 0.0;
    for (const auto& [alpha, c] : shifted.terms())
      if (alpha.degree() <= n_max) acc += c * lambda.coefficient(alpha);
    out.push_back(acc);
  }
  return out;
}

Polynomial combine(const std::vector<double>& coords, const PrimalDualPair& pair) {
  Polynomial p(pair.dual.nvars());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0.0) p += coords[i] * quotient_basis_element(pair, i);
  return p;
}

}  // namespace

Polynomial quotient_basis_element(const PrimalDualPair& pair, std::size_t i) {
  if (i >= pair.multiplicity()) throw IndexOutOfRange("quotient basis index out of range");
  const auto& beta = pair.primal[i];
  const std::size_t n = pair.dual.nvars();
  Polynomial b = Polynomial::constant(n, 1.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (beta[v] == 0) continue;
    Polynomial lin = Polynomial::variable(n, v) - Polynomial::constant(n, pair.dual.base[v]);
    b = b * lin.pow(beta[v]);
  }
  return b;
}

std::vector<double> normal_form_coords(const Polynomial& g, const PrimalDualPair& pair) {
  check_arity(g, pair);
  return coords_from_taylor(g.taylor_shift(pair.dual.base), pair);
}

Polynomial normal_form(const Polynomial& g, const PrimalDualPair& pair) {
  return combine(normal_form_coords(g, pair), pair);
}

MultiplicationTable mult_table(const PrimalDualPair& pair) {
  const std::size_t mu = pair.multiplicity();
  const std::size_t n = pair.dual.nvars();
  MultiplicationTable t;
  t.coords.assign(mu, std::vector<std::vector<double>>(mu));
  t.entries.assign(mu, std::vector<Polynomial>(mu, Polynomial(n)));
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t j = i; j < mu; ++j) {
      // b_i b_j = (x - zeta)^(beta_i + beta_j): its Taylor expansion is a
      // single monomial.
      Polynomial prod = Polynomial::monomial(pair.primal[i] + pair.primal[j]);
      auto c = coords_from_taylor(prod, pair);
      t.coords[i][j] = t.coords[j][i] = c;
      t.entries[i][j] = t.entries[j][i] = combine(c, pair);
    }
  return t;
}

}  // namespace singcert
