#pragma once

// Small dense linear algebra on Eigen matrices.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "singcert/errors.hpp"

namespace singcert {

using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-8;

/// Orthonormal basis of the numerical null space, one vector per column of
/// `vectors`.
struct KernelBasis {
  DenseMatrix vectors;
  double tol = kDefaultTol;
  /// Numerical rank of the input.
  std::size_t rank = 0;

  std::size_t dim() const { return static_cast<std::size_t>(vectors.cols()); }
};

/// Right singular vectors with sigma <= tol * sigma_max (sigma_max := 1 when
/// every singular value vanishes). Zero-row matrices have a full kernel.
KernelBasis numerical_kernel(const DenseMatrix& m, double tol = kDefaultTol);

std::size_t numerical_rank(const DenseMatrix& m, double tol = kDefaultTol);

/// Column-pivoted Gram-Schmidt: repeatedly takes the remaining column with
/// the largest residual norm (ties to the smallest index) until the residual
/// falls below tol * (largest original column norm).
std::vector<std::size_t> pivot_columns(const DenseMatrix& m, double tol = kDefaultTol);

/// Like pivot_columns, but scans candidates in the given order and accepts
/// the first whose residual norm is at least `accept` times the largest
/// remaining residual. accept = 1 recovers largest-norm pivoting (with ties
/// resolved by `order`); smaller values favour earlier columns as long as
/// the resulting minor stays well conditioned.
std::vector<std::size_t> ordered_pivot_columns(const DenseMatrix& m,
                                               const std::vector<std::size_t>& order,
                                               double accept, double tol = kDefaultTol);

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  bool operator==(const Signature&) const = default;
};

/// Eigenvalue sign counts of a symmetric matrix; |lambda| <= tol * ||S||_2
/// counts as zero.
Signature signature(const DenseMatrix& s, double tol = kDefaultTol);

struct InverseResult {
  DenseMatrix inverse;
  /// max-norm of M * inverse - I.
  double residual = 0.0;
};

/// Gauss-Jordan with partial pivoting. Throws SingularMatrix when a pivot
/// falls below 1e-13 * ||M||_max.
InverseResult approx_inverse(const DenseMatrix& m);

/// Orthonormal basis (as rows) of the row space, rank decided as in
/// numerical_kernel.
DenseMatrix orthonormal_row_basis(const DenseMatrix& m, double tol = kDefaultTol);

/// sin of the largest principal angle between the row spaces of a and b;
/// 1 when the dimensions differ.
double subspace_distance(const DenseMatrix& a, const DenseMatrix& b, double tol = kDefaultTol);

}  // namespace singcert
