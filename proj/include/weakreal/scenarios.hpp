// Executable registry of pre/post-selection case studies. Each scenario
// bundles a PPS (possibly with unitary time slicing), the projector
// bases of interest, and expected fixture values; run_scenario computes
// everything with the engine and reports per-fixture pass/fail.

#pragma once

#include "weakreal/ontology.hpp"
#include "weakreal/paradox.hpp"
#include "weakreal/weakvalue.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace weakreal {

using Params = std::map<std::string, double>;

struct FixtureResult {
    std::string description;
    cplx expected;
    cplx actual;
    bool pass;
};

struct BasisReport {
    std::string id;
    std::vector<std::string> labels;
    std::vector<cplx> weak_values;
    std::vector<double> abl;
};

struct ScenarioReport {
    std::string name;
    Params params;
    std::vector<std::string> notes;
    std::optional<PPSPair> pps;
    /// bases[0] is the fine-grained basis the paradox scan runs over.
    std::vector<BasisReport> bases;
    std::vector<FixtureResult> fixtures;
    bool paradox_expected = false;
    std::optional<ParadoxCertificate> certificate;
    std::optional<StructureSet> structures;

    bool all_pass() const;
};

/// Default 1e-10; the WEAKREAL_TOL environment variable overrides it.
double fixture_tolerance();

std::vector<std::string> scenario_names();
bool has_scenario(const std::string& name);
/// Parameters accepted by a scenario, with their default values.
Params scenario_defaults(const std::string& name);

/// Throws std::invalid_argument for unknown names, std::out_of_range for
/// parameters outside their declared ranges.
ScenarioReport run_scenario(const std::string& name, const Params& params = {});

}  // namespace weakreal
