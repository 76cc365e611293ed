#pragma once

// Dual space (inverse system) of a polynomial system at an isolated root,
// by Macaulay's dialytic matrices, by integration, and by integration with
// simultaneous computation of a quotient basis.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "singcert/numlin.hpp"
#include "singcert/polycore.hpp"

namespace singcert {

struct DualSpaceOptions {
  /// Relative singular-value threshold for kernels.
  double tol = kDefaultTol;
  int max_depth = 16;
  /// Bound on max |f_i(zeta)| accepted as "zeta is a root"; default
  /// max(1e-6, 10 * max |f_i(zeta)|).
  std::optional<double> residual_tol;
  /// Macaulay only: drop the columns of already chosen primal monomials so
  /// that each step yields only new elements.
  bool macaulay_primal = false;
  /// Primal monomial selection scans candidates by increasing degree and
  /// takes the first whose residual is at least this fraction of the best.
  double primal_accept = 0.1;
  /// Drop coefficients of the diagonalized basis below tol relative to the
  /// element's largest coefficient (numerically zero at this tolerance).
  bool prune_below_tol = true;
  /// Stop after computing D_t for t = stop_depth (0: run to stabilisation).
  int stop_depth = 0;
};

struct StepInfo {
  int depth = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t new_elements = 0;
};

struct StepStats {
  std::string method;
  std::vector<StepInfo> steps;

  /// The step that detected stabilisation (or the last step computed).
  const StepInfo& final_step() const;
  /// The step with the most matrix entries; earlier step wins ties.
  const StepInfo& largest_step() const;
};

struct DualBasis {
  Point base;
  std::vector<DualElement> elements;
  /// hilbert[t] = dim D_t for t = 0..nilindex.
  std::vector<std::size_t> hilbert;

  std::size_t multiplicity() const { return elements.size(); }
  int nilindex() const { return static_cast<int>(hilbert.size()) - 1; }
  std::size_t breadth() const { return hilbert.size() > 1 ? hilbert[1] - 1 : 0; }
  std::size_t nvars() const { return base.size(); }

  /// Rows: elements; columns: monomials of degree <= nilindex in ascending order.
  DenseMatrix coefficient_matrix() const;
};

struct PrimalDualPair {
  DualBasis dual;
  /// Exponents beta_i of the quotient basis (x - zeta)^beta_i, aligned with
  /// dual.elements.
  std::vector<MultiIndex> primal;

  std::size_t multiplicity() const { return primal.size(); }
  /// The primal exponents followed by every other monomial of degree <=
  /// nilindex in ascending order.
  std::vector<MultiIndex> support() const;
  /// Coefficients of the dual elements over support().
  DenseMatrix coefficient_matrix() const;
};

struct DualResult {
  DualBasis basis;
  StepStats stats;
};

struct PairResult {
  PrimalDualPair pair;
  StepStats stats;
};

DualResult macaulay_dual_basis(const PolynomialSystem& f, const Point& zeta,
                               const DualSpaceOptions& opts = {});
DualResult integration_dual_basis(const PolynomialSystem& f, const Point& zeta,
                                  const DualSpaceOptions& opts = {});
PairResult primal_dual_pair(const PolynomialSystem& f, const Point& zeta,
                            const DualSpaceOptions& opts = {});
/// Macaulay's construction with primal tracking; returns a pair like
/// primal_dual_pair.
PairResult macaulay_primal_dual_pair(const PolynomialSystem& f, const Point& zeta,
                                     const DualSpaceOptions& opts = {});

/// Replaces the basis by G^{-1} D where G holds the columns of `primal`, so
/// element i is 1 at primal[i] and 0 at every other primal exponent.
PrimalDualPair diagonalize_dual(const DualBasis& d, const std::vector<MultiIndex>& primal);

}  // namespace singcert
