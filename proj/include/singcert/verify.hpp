#pragma once

// Interval fixed-point certification (Rump's inclusion test in centered
// form) and the pipeline certifying a multiple root of a nearby system.

#include <optional>
#include <string>
#include <vector>

#include "singcert/deflate.hpp"
#include "singcert/interval.hpp"

namespace singcert {

enum class CertStatus { Certified, Inconclusive };

std::string to_string(CertStatus s);

enum class Preconditioner {
  /// R = inverse of the midpoint of the interval Jacobian M over Z.
  MidpointJacobian,
  /// R = inverse of the point Jacobian at z*.
  PointJacobian,
};

struct RumpOptions {
  Preconditioner preconditioner = Preconditioner::MidpointJacobian;
  /// On failure, retry once on the box widened by 10% about its midpoint.
  bool inflate_retry = false;
};

struct RumpResult {
  CertStatus status = CertStatus::Inconclusive;
  /// z* + V_c with V_c = -R F(z*) + (I - R M)(Z - z*); compared against Z.
  Box v;
  /// V_c itself, relative to z*.
  Box centered_v;
  /// Z - z*.
  Box centered_box;
  /// The box actually tested (differs from the input after inflation).
  Box box;
  std::vector<bool> interior;
  std::string reason;
  bool inflated = false;

  bool certified() const { return status == CertStatus::Certified; }
};

/// Certified iff V_c lies strictly inside Z - z*, which proves a unique
/// root of f in Z.
RumpResult rump_test(const PolynomialSystem& f, const Box& z, const Point& zstar, const RumpOptions& opts = {});

struct CertifyOptions {
  DualSpaceOptions dual;
  Theorem2Options deflation;
  RumpOptions rump;
};

struct CertificationResult {
  RumpResult rump;
  PrimalDualPair pair;
  DeflatedSystem deflated;
  /// Box of the full (x, eps) space that was tested.
  Box box;
  /// Enclosure of the retained eps variables (names aligned), valid when
  /// certified: the nearby system lies within this distance.
  std::vector<std::string> eps_names;
  Box eps_box;

  CertStatus status() const { return rump.status; }
  std::size_t multiplicity() const { return pair.multiplicity(); }
};

/// Dual structure at z*, theorem-2 deflation, then rump_test on Z extended
/// by [-eps_radius, eps_radius] for every retained eps variable. Stage
/// failures surface as StageError naming "dualspace", "deflate" or "verify".
CertificationResult certify_multiple_root(const PolynomialSystem& f, const Point& zstar, const Box& z,
                                          double eps_radius, const CertifyOptions& opts = {});

}  // namespace singcert
