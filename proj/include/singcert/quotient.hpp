#pragma once

// Normal forms in the local quotient R/Q and its multiplication table.
//
// The quotient basis is b_i = (x - zeta)^beta_i for the primal exponents of
// a diagonalized PrimalDualPair, so NF(g) = sum_i Lambda_i[g] b_i.

#include <vector>

#include "singcert/dualspace.hpp"

namespace singcert {

/// Coordinates (Lambda_1[g], ..., Lambda_mu[g]) of NF(g) over the basis b_i.
std::vector<double> normal_form_coords(const Polynomial& g, const PrimalDualPair& pair);

/// NF(g) expanded as a polynomial in x.
Polynomial normal_form(const Polynomial& g, const PrimalDualPair& pair);

/// The basis element b_i = (x - zeta)^beta_i as a polynomial in x.
Polynomial quotient_basis_element(const PrimalDualPair& pair, std::size_t i);

struct MultiplicationTable {
  /// coords[i][j][k]: coefficient of b_k in NF(b_i b_j).
  std::vector<std::vector<std::vector<double>>> coords;
  /// entries[i][j] = NF(b_i b_j) as a polynomial in x.
  std::vector<std::vector<Polynomial>> entries;

  std::size_t size() const { return coords.size(); }
};

MultiplicationTable mult_table(const PrimalDualPair& pair);

}  // namespace singcert
