#pragma once

// Topological degree at an isolated root from the signature of the
// quadratic form (b_i, b_j) -> Phi[NF(b_i b_j)], and the number of real
// half-branches of an implicit curve at a singular point.

#include <cstdint>
#include <optional>
#include <vector>

#include "singcert/dualspace.hpp"
#include "singcert/numlin.hpp"
#include "singcert/quotient.hpp"

namespace singcert {

/// det of the symbolic Jacobian of a square system, by cofactor expansion
/// along rows with minors memoized on their column sets.
Polynomial jacobian_determinant(const PolynomialSystem& f);

struct PhiChoice {
  DualElement phi;
  /// Phi[det J] (> 0).
  double value = 0.0;
  /// Basis element used (0-based), or empty for a random combination.
  std::optional<std::size_t> basis_index;
  /// +1 or -1 when a basis element was used.
  int sign = 1;
  /// Random combinations drawn before success (0 when a basis element worked).
  int random_attempts = 0;
  std::uint64_t seed = 0;
};

struct PhiOptions {
  /// |Phi[det J]| must exceed this.
  double tol = 1e-6;
  std::uint64_t seed = 0;
  int max_random_attempts = 8;
};

/// Scans the dual basis for the first Lambda_i with |Lambda_i[det J]| > tol
/// and returns it with the sign that makes the value positive; otherwise
/// tries seeded random combinations. Throws InvalidArgument when every
/// attempt vanishes on det J (the pair is inconsistent with f).
PhiChoice choose_phi(const PrimalDualPair& pair, const Polynomial& det_j, const PhiOptions& opts = {});

/// Random combination sum c_i Lambda_i with c_i uniform in [-1, 1].
DualElement random_dual_combination(const PrimalDualPair& pair, std::uint64_t seed);

struct QuadraticForm {
  DualElement phi;
  /// Entry (i, j) = Phi[NF(b_i b_j)].
  DenseMatrix matrix;
};

QuadraticForm quadratic_form(const PrimalDualPair& pair, const MultiplicationTable& table, const DualElement& phi);

struct TopologyOptions {
  DualSpaceOptions dual;
  PhiOptions phi;
  /// Relative eigenvalue threshold for the signature.
  double signature_tol = 1e-8;
};

struct TdegResult {
  int tdeg = 0;
  Signature signature;
  PrimalDualPair pair;
  StepStats stats;
  Polynomial det_j;
  PhiChoice phi;
  QuadraticForm form;
};

/// tdeg = n_+ - n_- of Q_Phi for the square system f at the isolated root zeta.
TdegResult tdeg(const PolynomialSystem& f, const Point& zeta, const TopologyOptions& opts = {});

struct BranchResult {
  /// Half-branches at zeta: 2 * tdeg(f, g).
  int branches = 0;
  /// p = sum (x_i - zeta_i)^2.
  Polynomial p;
  /// g = det J_(f, p).
  Polynomial g;
  /// The augmented square system (f, g).
  PolynomialSystem augmented;
  TdegResult degree;
};

/// Number of real half-branches of the curve f = 0 (n - 1 equations in n
/// variables) at the singular point zeta. Throws InvalidArgument when zeta
/// is not on the curve or the curve is smooth there.
BranchResult branch_count(const PolynomialSystem& f, const Point& zeta, const TopologyOptions& opts = {});

}  // namespace singcert
