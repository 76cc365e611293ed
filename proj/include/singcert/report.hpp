#pragma once

// JSON serialization of results. Objects keep insertion order and doubles
// are written in shortest round-trip form, so equal inputs give
// byte-identical output. Layout is described in docs/report-schema.md.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "singcert/deflate.hpp"
#include "singcert/dualspace.hpp"
#include "singcert/topology.hpp"
#include "singcert/verify.hpp"

namespace singcert {

using Json = nlohmann::ordered_json;

Json to_json(const Interval& iv);
Json to_json(const StepStats& stats);
Json to_json(const PolynomialSystem& f);
Json to_json(const DualElement& e, const std::vector<std::string>& names);
Json to_json(const DualBasis& d, const std::vector<std::string>& names);
Json to_json(const PrimalDualPair& pair, const std::vector<std::string>& names);
Json to_json(const DeflatedSystem& d);
Json to_json(const RumpResult& r, const std::vector<std::string>& names);
Json to_json(const CertificationResult& c, const std::vector<std::string>& names);
Json to_json(const TdegResult& t, const std::vector<std::string>& names);
Json to_json(const BranchResult& b, const std::vector<std::string>& names);

/// Monomial x^alpha as text ("1" for the constant), e.g. "x1^2*x2".
std::string monomial_text(const MultiIndex& alpha, const std::vector<std::string>& names);

}  // namespace singcert
