#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "liecurv/scenario.hpp"
#include "liecurv/suite.hpp"

using namespace liecurv;
using nlohmann::json;

namespace {

json load(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return json::parse(in);
}

std::filesystem::path scenario_dir() { return LIECURV_SCENARIO_DIR; }

} // namespace

TEST_CASE("every shipped scenario runs with its expectations met") {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(scenario_dir())) {
        if (entry.path().extension() != ".json") continue;
        const std::string stem = entry.path().stem().string();
        if (stem == "schema" || stem == "malformed") continue;
        ++seen;
        INFO("scenario file: " << entry.path().string());
        Scenario sc = parse_scenario(load(entry.path()), default_tolerances());
        ScenarioReport rep = run_scenario(sc);
        CHECK(rep.ok);
        CHECK(rep.name == sc.name);
        CHECK(!rep.checks.empty());
    }
    CHECK(seen >= 12);
}

TEST_CASE("the malformed scenario is rejected for its missing checks") {
    json doc = load(scenario_dir() / "malformed.json");
    try {
        parse_scenario(doc, default_tolerances());
        FAIL("parse_scenario must reject the document");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Schema);
        CHECK(std::string(e.what()).find("checks") != std::string::npos);
    }
}

TEST_CASE("reports are deterministic for a fixed seed") {
    json doc = load(scenario_dir() / "su2-round-curvature.json");
    Scenario sc = parse_scenario(doc, default_tolerances());
    std::string a = scenario_report_json(run_scenario(sc)).dump(2);
    std::string b = scenario_report_json(run_scenario(sc)).dump(2);
    CHECK(a == b);

    json j = scenario_report_json(run_scenario(sc));
    CHECK(j["version"] == "1");
    CHECK(j["scenario"] == sc.name);
    CHECK(j["ok"].is_boolean());
    CHECK(j["checks"].is_array());

    std::string text = scenario_report_text(run_scenario(sc));
    CHECK(text.find(sc.name) != std::string::npos);
}

TEST_CASE("inline structure tables work end to end") {
    json doc = {
        {"name", "inline heisenberg"},
        {"target", "algebra_checks"},
        {"algebra",
         {{"dim", 3},
          {"brackets", json::array({{{"i", 0}, {"j", 1}, {"c", {0.0, 0.0, 1.0}}}})}}},
        {"metric", "identity"},
        {"checks", json::array({"jacobi", {{"name", "ad_invariant"}, {"expect", "fail"}}})},
    };
    Scenario sc = parse_scenario(doc, default_tolerances());
    CHECK(sc.algebra_id.empty());
    ScenarioReport rep = run_scenario(sc);
    CHECK(rep.ok);
    REQUIRE(rep.checks.size() == 2);
    CHECK(rep.checks[0].outcome == "pass");
    CHECK(rep.checks[1].outcome == "fail");
    CHECK(rep.checks[1].ok);  // failing was expected
}

TEST_CASE("schema violations carry the Schema error code") {
    auto expect_schema = [](json doc) {
        try {
            parse_scenario(doc, default_tolerances());
            FAIL_CHECK("document should have been rejected: " << doc.dump());
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Schema);
        }
    };

    json base = {
        {"name", "x"},
        {"target", "curvature"},
        {"algebra", "su2"},
        {"checks", json::array({"axioms"})},
    };

    json bad_check = base;
    bad_check["checks"] = json::array({"no-such-check"});
    expect_schema(bad_check);

    json bad_expect = base;
    bad_expect["checks"] = json::array({{{"name", "axioms"}, {"expect", "maybe"}}});
    expect_schema(bad_expect);

    json bad_target = base;
    bad_target["target"] = "sandwiches";
    expect_schema(bad_target);

    json bad_gauss = {
        {"name", "x"},
        {"target", "germ"},
        {"algebra", "su2"},
        {"germ",
         {{"tangent", {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}},
          {"eta", {0.0, 0.0, 1.0}},
          {"gauss_term", {{0.0, 1.0, 2.0}}}}},
        {"checks", json::array({"prop9"})},
    };
    expect_schema(bad_gauss);

    json bad_tol = base;
    bad_tol["tolerances"] = {{"bogus_knob", 1e-3}};
    expect_schema(bad_tol);
}

TEST_CASE("check registries expose the documented names") {
    auto has = [](const std::vector<std::string>& v, const std::string& s) {
        for (const std::string& x : v)
            if (x == s) return true;
        return false;
    };
    CHECK(has(checks_for_target("germ"), "shape"));
    CHECK(has(checks_for_target("germ"), "theorem1"));
    CHECK(has(checks_for_target("immersion"), "frame"));
    CHECK(has(checks_for_target("immersion"), "gauss_independence"));
    CHECK(has(checks_for_target("curvature"), "einstein"));
    CHECK(has(checks_for_target("algebra_checks"), "signature"));
    CHECK_THROWS_AS(checks_for_target("sandwiches"), Error);
}

TEST_CASE("tolerance names are validated") {
    Tolerances t;
    CHECK(t.set("tol_fd", 1e-5));
    CHECK(t.tol_fd == doctest::Approx(1e-5));
    CHECK_FALSE(t.set("bogus", 1.0));
}

TEST_CASE("verification suite passes and serializes deterministically") {
    SuiteReport rep = run_paper_verification(5);
    CHECK(rep.all_pass);
    REQUIRE(rep.criteria.size() == 10);
    for (const CriterionResult& c : rep.criteria) {
        INFO("criterion " << c.index << ": " << c.name << " — " << c.note);
        CHECK(c.pass);
    }
    SuiteReport again = run_paper_verification(5);
    CHECK(suite_report_json(rep) == suite_report_json(again));
}
