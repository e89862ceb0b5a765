// JSON interchange for every public artifact. Complex numbers are
// [re, im] pairs; exact rationals are [num, den]; Q(sqrt2) scalars are
// {"a": [num, den], "b": [num, den], "value": double} meaning a + b*sqrt2.

#pragma once

#include "weakreal/ontology.hpp"
#include "weakreal/paradox.hpp"
#include "weakreal/pointer.hpp"
#include "weakreal/scenarios.hpp"

#include <json.hpp>

#include <string>

namespace weakreal {

using json = nlohmann::json;

json to_json(const cplx& z);
cplx cplx_from_json(const json& j);

json to_json(const Ket& k);
Ket ket_from_json(const json& j);

json to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(const json& j);

json to_json(const WeakValueReport& report);
json to_json(const UpsideDownState& rho);
json to_json(const ParadoxCertificate& cert);
json to_json(const StructureSet& set);
json to_json(const QSqrt2& q);
json to_json(const Decomposition& dec);
json to_json(const CardinalJointTable& table);
json to_json(const ScenarioReport& report);
json to_json(const PointerState& ps);

/// Parses entries like "4/3", "-1/3+2i", "i/2" into exact complex
/// rationals; the vector form accepts "(4/3,-1/3)".
CSqrt2 parse_rational_complex(const std::string& text);
std::vector<CSqrt2> parse_rational_vector(const std::string& text);

}  // namespace weakreal
