#pragma once

// Command-line front end: singcert <command> [options] <problem file | dir>.
//
//   analyze   dual space / primal-dual pair and matrix sizes
//   deflate   theorem-1 and theorem-2 deflated systems
//   certify   Rump inclusion for a nearby system with a multiple root
//   tdeg      topological degree at the point
//   branches  real half-branches of a curve at a singular point
//   bench     per-file multiplicity and final matrix sizes of both methods

#include <iosfwd>
#include <string>
#include <vector>

namespace singcert {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInconclusive = 2;  // only with --strict
inline constexpr int kExitParse = 3;         // bad arguments, unreadable or malformed input
inline constexpr int kExitFailure = 4;       // a computation stage failed

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace singcert
