#pragma once

// Deflation of an isolated multiple root: the square system of selected
// dual conditions (no new variables), and the perturbed square system in
// (x, epsilon) whose regular root certifies a nearby system with the same
// local structure.

#include <cstddef>
#include <string>
#include <vector>

#include "singcert/dualspace.hpp"

namespace singcert {

/// Equations Lambda_i(d_x)[g_k] (differentiated, not evaluated), k outer and
/// i inner: equation index k * mu + i. Dual elements act on the leading
/// variables of g when g has extra trailing variables.
PolynomialSystem dg_system(const PolynomialSystem& g, const DualBasis& d);

/// Jacobian of dg_system(f, d) at zeta, (mu * s) x n.
DenseMatrix dg_jacobian(const PolynomialSystem& f, const DualBasis& d, const Point& zeta);

/// n rows of the Jacobian of dg_system(f, d) at zeta forming a well
/// conditioned invertible minor, in the order they were chosen. Rows are
/// scanned in equation order and the first row whose residual is at least
/// `accept` times the best remaining residual is taken.
std::vector<std::size_t> select_rows(const PolynomialSystem& f, const DualBasis& d, const Point& zeta,
                                     double tol = kDefaultTol, double accept = 0.1);

struct EpsVariable {
  std::size_t equation = 0;  // k
  std::size_t basis = 0;     // i
  std::string name;
};

/// g_k = f_k + sum_i eps_{k,i} b_i over variables (x, eps), eps ordered k
/// outer. With centered monomials b_i = (x - zeta)^beta_i, so that
/// Lambda_i[p_k] = eps_{k,i} exactly at zeta; otherwise b_i = x^beta_i.
struct PerturbedSystem {
  PolynomialSystem system;
  std::vector<EpsVariable> eps;
  std::size_t nx = 0;
  std::size_t mu = 0;
  bool centered = true;

  std::size_t eps_variable(std::size_t k, std::size_t i) const { return nx + k * mu + i; }
};

PerturbedSystem perturbed_system(const PolynomialSystem& f, const PrimalDualPair& pair, bool centered = true);

enum class DeflationKind { Theorem1, Theorem2 };

struct DeflatedSystem {
  DeflationKind kind = DeflationKind::Theorem1;
  PolynomialSystem equations;
  /// Indices into dg_system order (k * mu + i).
  std::vector<std::size_t> selected;
  /// Names of the epsilon variables set to zero and removed (theorem 2).
  std::vector<std::string> removed_eps;
  /// The distinguished root: zeta, or (zeta, 0) for theorem 2.
  Point root;
};

DeflatedSystem deflated_theorem1(const PolynomialSystem& f, const DualBasis& d, const Point& zeta,
                                 double tol = kDefaultTol);

struct Theorem2Options {
  double tol = kDefaultTol;
  bool centered = true;
};

DeflatedSystem deflated_theorem2(const PolynomialSystem& f, const PrimalDualPair& pair, const Point& zeta,
                                 const Theorem2Options& opts = {});

/// Jacobian of a system at a point.
DenseMatrix jacobian_at(const PolynomialSystem& f, std::span<const double> pt);

struct NewtonResult {
  Point x;
  /// Step norms ||x_{k+1} - x_k||_2.
  std::vector<double> steps;
  bool converged = false;
};

/// Newton iteration on a square system; stops when the step drops below
/// tol * (1 + ||x||) or after max_iter iterations.
NewtonResult newton_solve(const PolynomialSystem& f, Point x0, int max_iter = 20, double tol = 1e-14);

/// The one-variable construction for g with a mu-fold root at 0: variables
/// (x, e1, ..., e_{mu-1}), equations d^j (g + e1 + e2 x + ... + e_{mu-1}
/// x^{mu-2}) for j = 0..mu-1 with d^j = (1/j!) (d/dx)^j.
PolynomialSystem univariate_deflation(const Polynomial& g, std::size_t mu);

}  // namespace singcert
