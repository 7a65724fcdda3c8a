#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liecurv/liealg.hpp"
#include "liecurv/matrixgroup.hpp"
#include "liecurv/submanifold.hpp"

namespace liecurv {

/// One requested check with its expected outcome: "pass" (default), "fail",
/// or "error" (a domain error is the point of the scenario).
struct ScenarioCheck {
    std::string name;
    std::string expect = "pass";
};

/// A parsed scenario file. `algebra_id` is empty for inline structure-table
/// algebras. Metric resolution and target payloads happen at parse time;
/// anything malformed throws Error(Schema) with a message naming the field.
struct Scenario {
    std::string name;
    std::string target;  // algebra_checks | curvature | germ | immersion

    std::string algebra_id;  // catalog id, or "" for inline tables
    LieAlgebra algebra;
    BilinearForm metric;
    std::string metric_kind;  // default | killing | identity | custom

    // target == "germ"
    std::vector<Vector> germ_tangent;
    Vector germ_eta;
    std::optional<Matrix> germ_gauss;

    // target == "immersion"
    std::optional<Immersion> immersion;
    Vector base_point;

    std::vector<ScenarioCheck> checks;
    Tolerances tols;
    std::uint64_t seed = 1;
    int samples = 300;

    Scenario() : algebra(1, {{{0.0}}}), metric(Matrix::Identity(1, 1)) {}
};

/// Parse and validate a scenario document. `base` supplies tolerance
/// defaults which the scenario's "tolerances" object may override.
Scenario parse_scenario(const nlohmann::json& doc, const Tolerances& base);

/// Names of checks valid for each target (used for validation and the
/// catalog listing).
std::vector<std::string> checks_for_target(const std::string& target);

struct CheckOutcome {
    std::string name;
    std::string expect;
    std::string outcome;  // pass | fail | error
    bool ok = false;      // outcome == expect
    std::string message;  // error text when outcome == "error"
    nlohmann::json data;  // check-specific numbers
};

struct ScenarioReport {
    std::string name;
    std::string algebra;
    std::string target;
    bool ok = false;  // every check's outcome matched its expectation
    std::vector<CheckOutcome> checks;
};

/// Evaluate every check of the scenario. Domain errors inside a check make
/// that check's outcome "error"; anything failing outside the check
/// machinery (schema-level inconsistency, unexpected exceptions) propagates.
ScenarioReport run_scenario(const Scenario& sc);

/// Deterministic JSON rendering (schema version "1", no timing).
nlohmann::json scenario_report_json(const ScenarioReport& rep);
std::string scenario_report_text(const ScenarioReport& rep);

} // namespace liecurv
