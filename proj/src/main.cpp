#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "liecurv/catalog.hpp"
#include "liecurv/matrixgroup.hpp"
#include "liecurv/scenario.hpp"
#include "liecurv/suite.hpp"
#include "liecurv/types.hpp"

using nlohmann::json;

namespace {

// Exit codes: 0 all expectations met, 2 verdict/expectation mismatch,
// 1 schema violation or unexpected domain error.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMismatch = 2;

// Scenario files shipped under scenarios/. The table is what
// `catalog --scenarios` prints; descriptions say what each file exercises.
struct ShippedScenario {
    const char* file;
    const char* target;
    const char* what;
};

const ShippedScenario kShipped[] = {
    {"su2-hypersurface.json", "germ", "equatorial 2-sphere germ in su(2): square law, spectrum, sign convention, shape gate"},
    {"sl2r-lorentz-plane.json", "germ", "timelike-normal plane in sl(2,R); `adapted` expects an error (no normal term given)"},
    {"su2xsu2-diagonal-germ.json", "germ", "antidiagonal tangent in su(2)+su(2): dimension-3 kernel-line equivalence and eigenspace checks"},
    {"su2-inconsistent-gauss.json", "germ", "normal term breaking self-adjointness: `shape` expects an error, `adapted` still reports"},
    {"sl2r-null-eta.json", "germ", "null normal direction: every germ check expects an error"},
    {"su2-round-curvature.json", "curvature", "constant curvature 1/4 and the Einstein constant on su(2)"},
    {"su2xsu2-mixed-curvature.json", "curvature", "product metric: Einstein holds, constant curvature expects `fail`"},
    {"se2-default-metric.json", "algebra_checks", "shipped se2 metric is not ad-invariant (expects `fail`); Killing form still is"},
    {"se2-killing-metric.json", "algebra_checks", "degenerate Killing form: `signature` expects an error"},
    {"heisenberg-inline.json", "algebra_checks", "inline structure table; identity metric fails ad-invariance"},
    {"su2-graph-immersion.json", "immersion", "exponential graph in SU(2): frame, derivative cross-validation, eigenspace checks"},
    {"abelian3-sphere.json", "immersion", "round sphere in R^3: umbilic verdict and derivative cross-validation"},
    {"malformed.json", "-", "deliberately missing `checks`; running it exercises the schema gate (exit 1)"},
};

// LIECURV_TOL_OVERRIDE holds a JSON object mapping tolerance names to
// values, applied before the scenario file's own "tolerances" block.
void apply_env_overrides(liecurv::Tolerances& tols) {
    const char* raw = std::getenv("LIECURV_TOL_OVERRIDE");
    if (raw == nullptr || *raw == '\0') return;
    json doc;
    try {
        doc = json::parse(raw);
    } catch (const json::parse_error& e) {
        liecurv::fail(liecurv::ErrorCode::Schema,
                      std::string("LIECURV_TOL_OVERRIDE is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        liecurv::fail(liecurv::ErrorCode::Schema, "LIECURV_TOL_OVERRIDE must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!it.value().is_number())
            liecurv::fail(liecurv::ErrorCode::Schema,
                          "LIECURV_TOL_OVERRIDE value for '" + it.key() + "' must be a number");
        if (!tols.set(it.key(), it.value().get<double>()))
            liecurv::fail(liecurv::ErrorCode::Schema,
                          "LIECURV_TOL_OVERRIDE names unknown tolerance '" + it.key() + "'");
    }
}

struct RunArgs {
    std::string file;
    bool json_out = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double tol_fd = 0.0;
    bool tol_fd_set = false;
};

int do_run(const RunArgs& args) {
    liecurv::Tolerances base = liecurv::default_tolerances();
    apply_env_overrides(base);

    std::ifstream in(args.file);
    if (!in) liecurv::fail(liecurv::ErrorCode::Schema, "cannot read scenario file '" + args.file + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        liecurv::fail(liecurv::ErrorCode::Schema,
                      "scenario file '" + args.file + "' is not valid JSON: " + e.what());
    }

    liecurv::Scenario sc = liecurv::parse_scenario(doc, base);
    if (args.seed_set) sc.seed = args.seed;
    if (args.tol_fd_set) sc.tols.set("tol_fd", args.tol_fd);

    liecurv::ScenarioReport rep = liecurv::run_scenario(sc);
    if (args.json_out)
        std::cout << liecurv::scenario_report_json(rep).dump(2) << "\n";
    else
        std::cout << liecurv::scenario_report_text(rep);
    return rep.ok ? kExitOk : kExitMismatch;
}

int do_catalog(bool algebras, bool families, bool scenarios) {
    bool all = !algebras && !families && !scenarios;
    bool first = true;
    auto section = [&first](const char* title) {
        if (!first) std::cout << "\n";
        std::cout << title << "\n";
        first = false;
    };
    if (all || algebras) {
        section("algebras:");
        for (const std::string& row : liecurv::catalog_listing()) std::cout << "  " << row << "\n";
    }
    if (all || families) {
        section("immersion families:");
        for (const std::string& row : liecurv::immersion_family_listing()) std::cout << "  " << row << "\n";
    }
    if (all || scenarios) {
        section("bundled scenarios (scenarios/):");
        for (const ShippedScenario& s : kShipped)
            std::cout << "  " << s.file << " [" << s.target << "] - " << s.what << "\n";
    }
    return kExitOk;
}

int do_suite(const std::string& name, std::uint64_t seed, bool json_out) {
    if (name != "paper-verification")
        liecurv::fail(liecurv::ErrorCode::UnknownId,
                      "unknown suite '" + name + "' (available: paper-verification)");
    liecurv::Tolerances base = liecurv::default_tolerances();
    apply_env_overrides(base);

    auto t0 = std::chrono::steady_clock::now();
    liecurv::SuiteReport rep = liecurv::run_paper_verification(seed, base);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (json_out)
        std::cout << liecurv::suite_report_json(rep);
    else
        std::cout << liecurv::suite_report_text(rep, elapsed);
    return rep.all_pass ? kExitOk : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"liecurv - curvature and shape verdicts for bi-invariant metrics on Lie groups"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "evaluate a scenario file and compare outcomes to expectations");
    run_cmd->add_option("file", run_args.file, "scenario JSON file")->required();
    run_cmd->add_flag("--json", run_args.json_out, "emit the report as JSON");
    CLI::Option* run_seed = run_cmd->add_option("--seed", run_args.seed, "override the scenario's RNG seed");
    CLI::Option* run_tol = run_cmd->add_option("--tol-fd", run_args.tol_fd,
                                               "override the finite-difference verdict tolerance");

    bool cat_algebras = false, cat_families = false, cat_scenarios = false;
    CLI::App* cat_cmd = app.add_subcommand("catalog", "list built-in algebras, immersion families, and bundled scenarios");
    cat_cmd->add_flag("--algebras", cat_algebras, "list catalog algebras");
    cat_cmd->add_flag("--families", cat_families, "list immersion families");
    cat_cmd->add_flag("--scenarios", cat_scenarios, "list bundled scenario files");

    std::string suite_name;
    std::uint64_t suite_seed = 1;
    bool suite_json = false;
    CLI::App* suite_cmd = app.add_subcommand("suite", "run a named verification suite");
    suite_cmd->add_option("name", suite_name, "suite name (paper-verification)")->required();
    suite_cmd->add_option("--seed", suite_seed, "RNG seed (default 1)");
    suite_cmd->add_flag("--json", suite_json, "emit the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }

    try {
        if (*run_cmd) {
            run_args.seed_set = run_seed->count() > 0;
            run_args.tol_fd_set = run_tol->count() > 0;
            return do_run(run_args);
        }
        if (*cat_cmd) return do_catalog(cat_algebras, cat_families, cat_scenarios);
        if (*suite_cmd) return do_suite(suite_name, suite_seed, suite_json);
    } catch (const liecurv::Error& e) {
        std::cerr << "error (" << liecurv::error_code_name(e.code()) << "): " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
