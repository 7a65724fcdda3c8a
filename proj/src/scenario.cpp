#include "liecurv/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "liecurv/catalog.hpp"
#include "liecurv/curvature.hpp"

namespace liecurv {
namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& what) { fail(ErrorCode::Schema, what); }

const json& need(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) schema_fail(std::string("missing field '") + key + "'");
    return *it;
}

std::string need_string(const json& doc, const char* key) {
    const json& v = need(doc, key);
    if (!v.is_string()) schema_fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

Vector parse_vector(const json& v, const std::string& field) {
    if (!v.is_array() || v.empty()) schema_fail("field '" + field + "' must be a nonempty array");
    Vector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_number()) schema_fail("field '" + field + "' must hold numbers");
        out(k) = v[k].get<double>();
    }
    return out;
}

Matrix parse_matrix(const json& v, const std::string& field) {
    if (!v.is_array() || v.empty()) schema_fail("field '" + field + "' must be an array of rows");
    std::size_t cols = 0;
    std::vector<Vector> rows;
    for (const json& r : v) {
        Vector row = parse_vector(r, field);
        if (cols == 0) cols = row.size();
        if (static_cast<std::size_t>(row.size()) != cols)
            schema_fail("field '" + field + "' has ragged rows");
        rows.push_back(row);
    }
    Matrix out(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(r) = rows[r].transpose();
    return out;
}

LieAlgebra parse_inline_algebra(const json& spec) {
    const json& dim_field = need(spec, "dim");
    if (!dim_field.is_number_integer()) schema_fail("algebra.dim must be an integer");
    int dim = dim_field.get<int>();
    if (dim < 1 || dim > 32) schema_fail("algebra.dim must be between 1 and 32");

    std::vector<std::vector<std::vector<double>>> table(
        dim, std::vector<std::vector<double>>(dim, std::vector<double>(dim, 0.0)));
    const json& brackets = need(spec, "brackets");
    if (!brackets.is_array()) schema_fail("algebra.brackets must be an array");
    for (const json& row : brackets) {
        if (!row.is_object()) schema_fail("algebra.brackets entries must be objects");
        const json& fi = need(row, "i");
        const json& fj = need(row, "j");
        if (!fi.is_number_integer() || !fj.is_number_integer())
            schema_fail("bracket indices must be integers");
        int i = fi.get<int>(), j = fj.get<int>();
        if (i < 0 || j < 0 || i >= dim || j >= dim || i >= j)
            schema_fail("bracket entries must have 0 <= i < j < dim");
        Vector c = parse_vector(need(row, "c"), "algebra.brackets.c");
        if (c.size() != dim) schema_fail("bracket coefficient vector must have length dim");
        for (int k = 0; k < dim; ++k) table[i][j][k] = c(k);
    }
    return LieAlgebra(dim, table);
}

const std::vector<std::string> kExpect = {"pass", "fail", "error"};

} // namespace

std::vector<std::string> checks_for_target(const std::string& target) {
    if (target == "algebra_checks") return {"jacobi", "ad_invariant", "killing_ad_invariant", "signature"};
    if (target == "curvature") return {"axioms", "constant_curvature", "einstein"};
    std::vector<std::string> germ_checks = {"prop9",   "corollary11", "prop4",           "umbilic",
                                            "theorem1", "adapted",    "sign_convention", "shape"};
    if (target == "germ") return germ_checks;
    if (target == "immersion") {
        germ_checks.insert(germ_checks.begin(), {"frame", "prop6", "gauss_independence"});
        return germ_checks;
    }
    schema_fail("unknown target '" + target + "'");
}

Scenario parse_scenario(const json& doc, const Tolerances& base) {
    if (!doc.is_object()) schema_fail("scenario document must be a JSON object");
    Scenario sc;
    sc.tols = base;

    if (doc.contains("name")) {
        if (!doc["name"].is_string()) schema_fail("field 'name' must be a string");
        sc.name = doc["name"].get<std::string>();
    }
    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        if (!t.is_object()) schema_fail("field 'tolerances' must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            if (!it.value().is_number()) schema_fail("tolerance overrides must be numbers");
            if (!sc.tols.set(it.key(), it.value().get<double>()))
                schema_fail("unknown tolerance '" + it.key() + "'");
        }
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
            schema_fail("field 'seed' must be an integer");
        sc.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("samples")) {
        if (!doc["samples"].is_number_integer()) schema_fail("field 'samples' must be an integer");
        sc.samples = doc["samples"].get<int>();
        if (sc.samples < 1 || sc.samples > 100000) schema_fail("field 'samples' out of range");
    }

    sc.target = need_string(doc, "target");
    std::vector<std::string> valid = checks_for_target(sc.target);  // validates target too

    // Algebra.
    const json& alg = need(doc, "algebra");
    if (alg.is_string()) {
        sc.algebra_id = alg.get<std::string>();
        sc.algebra = catalog_entry(sc.algebra_id, sc.tols).algebra;
    } else if (alg.is_object()) {
        sc.algebra = parse_inline_algebra(alg);
    } else {
        schema_fail("field 'algebra' must be a catalog id or an inline table object");
    }

    // Metric.
    std::string kind = "default";
    if (doc.contains("metric")) {
        const json& m = doc["metric"];
        if (m.is_string()) {
            kind = m.get<std::string>();
            if (kind != "default" && kind != "killing" && kind != "identity")
                schema_fail("metric keyword must be default, killing, or identity");
        } else if (m.is_array()) {
            kind = "custom";
            Matrix gram = parse_matrix(m, "metric");
            if (gram.rows() != gram.cols() || gram.rows() != sc.algebra.dim())
                schema_fail("metric Gram matrix must be square of the algebra dimension");
            sc.metric = BilinearForm(gram, sc.tols);
        } else {
            schema_fail("field 'metric' must be a keyword or a Gram matrix");
        }
    }
    sc.metric_kind = kind;
    if (kind == "default") {
        sc.metric = sc.algebra_id.empty()
                        ? BilinearForm(Matrix::Identity(sc.algebra.dim(), sc.algebra.dim()), sc.tols)
                        : BilinearForm(catalog_entry(sc.algebra_id, sc.tols).default_metric, sc.tols);
    } else if (kind == "identity") {
        sc.metric = BilinearForm(Matrix::Identity(sc.algebra.dim(), sc.algebra.dim()), sc.tols);
    } else if (kind == "killing") {
        sc.metric = killing_form(sc.algebra, sc.tols);
    }

    // Target payloads.
    if (sc.target == "germ") {
        const json& g = need(doc, "germ");
        if (!g.is_object()) schema_fail("field 'germ' must be an object");
        Matrix tangent = parse_matrix(need(g, "tangent"), "germ.tangent");
        if (tangent.cols() != sc.algebra.dim())
            schema_fail("germ.tangent rows must have the algebra dimension");
        for (int r = 0; r < tangent.rows(); ++r) sc.germ_tangent.push_back(tangent.row(r));
        sc.germ_eta = parse_vector(need(g, "eta"), "germ.eta");
        if (sc.germ_eta.size() != sc.algebra.dim())
            schema_fail("germ.eta must have the algebra dimension");
        if (g.contains("gauss_term")) {
            const json& w = g["gauss_term"];
            if (w.is_string() && w.get<std::string>() == "zero") {
                sc.germ_gauss = Matrix::Zero(tangent.rows(), tangent.rows());
            } else if (w.is_array()) {
                Matrix gw = parse_matrix(w, "germ.gauss_term");
                if (gw.rows() != tangent.rows() || gw.cols() != tangent.rows())
                    schema_fail("germ.gauss_term must be square in the tangent dimension");
                sc.germ_gauss = gw;
            } else {
                schema_fail("germ.gauss_term must be a matrix or the keyword \"zero\"");
            }
        }
    } else if (sc.target == "immersion") {
        if (sc.algebra_id.empty())
            schema_fail("immersion scenarios need a catalog algebra (a matrix model)");
        if (kind != "default")
            schema_fail("immersion scenarios use the catalog default metric");
        const json& im = need(doc, "immersion");
        if (!im.is_object()) schema_fail("field 'immersion' must be an object");
        std::string family = need_string(im, "family");
        auto model = catalog_model(sc.algebra_id, sc.tols);

        auto generators_of = [&](const json& spec) {
            Matrix g = parse_matrix(need(spec, "generators"), "immersion.generators");
            if (g.cols() != sc.algebra.dim())
                schema_fail("immersion.generators rows must have the algebra dimension");
            std::vector<Vector> gens;
            for (int r = 0; r < g.rows(); ++r) gens.push_back(g.row(r));
            return gens;
        };
        Vector offset;
        if (im.contains("offset")) offset = parse_vector(im["offset"], "immersion.offset");

        if (family == "exp-chart") {
            sc.immersion = make_exp_chart(model, generators_of(im), offset);
        } else if (family == "exp-graph") {
            Vector normal = parse_vector(need(im, "normal"), "immersion.normal");
            const json& co = need(im, "coefficients");
            if (!co.is_object()) schema_fail("immersion.coefficients must be an object");
            double f0 = 0.0;
            if (co.contains("const")) {
                if (!co["const"].is_number()) schema_fail("coefficients.const must be a number");
                f0 = co["const"].get<double>();
            }
            std::vector<Vector> gens = generators_of(im);
            Vector lin = Vector::Zero(gens.size());
            if (co.contains("linear")) lin = parse_vector(co["linear"], "coefficients.linear");
            Matrix quad = Matrix::Zero(gens.size(), gens.size());
            if (co.contains("quadratic")) quad = parse_matrix(co["quadratic"], "coefficients.quadratic");
            sc.immersion = make_exp_graph(model, gens, normal, f0, lin, quad, offset);
        } else if (family == "sphere") {
            const json& rad = need(im, "radius");
            if (!rad.is_number()) schema_fail("immersion.radius must be a number");
            Vector center = parse_vector(need(im, "center"), "immersion.center");
            Vector axis = parse_vector(need(im, "axis"), "immersion.axis");
            sc.immersion = make_sphere(model, rad.get<double>(), center, axis);
        } else {
            schema_fail("unknown immersion family '" + family + "'");
        }
        sc.base_point = parse_vector(need(doc, "base_point"), "base_point");
        if (sc.base_point.size() != sc.immersion->source_dim)
            schema_fail("base_point must have the immersion's source dimension");
    }

    // Checks.
    const json& checks = need(doc, "checks");
    if (!checks.is_array() || checks.empty()) schema_fail("field 'checks' must be a nonempty array");
    for (const json& c : checks) {
        ScenarioCheck sck;
        if (c.is_string()) {
            sck.name = c.get<std::string>();
        } else if (c.is_object()) {
            sck.name = need_string(c, "name");
            if (c.contains("expect")) {
                if (!c["expect"].is_string()) schema_fail("check 'expect' must be a string");
                sck.expect = c["expect"].get<std::string>();
            }
        } else {
            schema_fail("checks entries must be names or {name, expect} objects");
        }
        if (std::find(kExpect.begin(), kExpect.end(), sck.expect) == kExpect.end())
            schema_fail("check 'expect' must be pass, fail, or error");
        if (std::find(valid.begin(), valid.end(), sck.name) == valid.end())
            schema_fail("check '" + sck.name + "' is not valid for target '" + sc.target + "'");
        sc.checks.push_back(std::move(sck));
    }
    return sc;
}

namespace {

/// Lazily built evaluation state. Construction failures are remembered and
/// rethrown inside each check that needs the failed piece, so a scenario can
/// expect = "error" on them.
struct Env {
    const Scenario& sc;
    std::optional<CurvatureContext> ctx;
    std::exception_ptr ctx_error;
    bool ctx_tried = false;
    std::optional<Germ> germ;
    std::exception_ptr germ_error;
    bool germ_tried = false;

    explicit Env(const Scenario& s) : sc(s) {}

    CurvatureContext& context() {
        if (!ctx_tried) {
            ctx_tried = true;
            try {
                ctx.emplace(sc.algebra, sc.metric, sc.tols);
            } catch (const Error&) {
                ctx_error = std::current_exception();
            }
        }
        if (ctx_error) std::rethrow_exception(ctx_error);
        return *ctx;
    }

    Germ& germ_data() {
        if (!germ_tried) {
            germ_tried = true;
            try {
                if (sc.target == "immersion") {
                    germ.emplace(germ_from_immersion(*sc.immersion, sc.base_point, sc.tols));
                } else {
                    const MetricLieAlgebra& mla = context().metric_algebra();
                    germ.emplace(sc.germ_gauss
                                     ? make_germ(mla, sc.germ_tangent, sc.germ_eta, *sc.germ_gauss, sc.tols)
                                     : make_germ(mla, sc.germ_tangent, sc.germ_eta, sc.tols));
                }
            } catch (const Error&) {
                germ_error = std::current_exception();
            }
        }
        if (germ_error) std::rethrow_exception(germ_error);
        return *germ;
    }
};

json profile_json(const std::vector<std::pair<double, int>>& profile) {
    json rows = json::array();
    for (const auto& [value, count] : profile) rows.push_back(json::array({value, count}));
    return rows;
}

std::pair<bool, json> eval_check(const std::string& name, Env& env) {
    const Scenario& sc = env.sc;
    const Tolerances& tols = sc.tols;

    if (name == "jacobi") {
        double r = jacobi_residual(sc.algebra);
        return {r <= tols.tol_jacobi, json{{"residual", r}}};
    }
    if (name == "ad_invariant") {
        double r = ad_invariance_residual(sc.algebra, sc.metric);
        return {r <= tols.tol, json{{"residual", r}}};
    }
    if (name == "killing_ad_invariant") {
        BilinearForm killing = killing_form(sc.algebra, tols);
        double r = ad_invariance_residual(sc.algebra, killing);
        return {r <= tols.tol, json{{"residual", r}, {"degenerate", killing.is_degenerate()}}};
    }
    if (name == "signature") {
        Signature s = signature(sc.metric, tols);
        return {true, json{{"positive", s.positive}, {"negative", s.negative}}};
    }

    if (name == "axioms") {
        AxiomResiduals r = curvature_axiom_residuals(env.context(), sc.samples, sc.seed);
        double worst = std::max({r.pair_symmetry, r.skew_symmetry, r.first_bianchi});
        return {worst <= tols.tol,
                json{{"pair_symmetry", r.pair_symmetry},
                     {"skew_symmetry", r.skew_symmetry},
                     {"first_bianchi", r.first_bianchi}}};
    }
    if (name == "constant_curvature") {
        ConstantCurvatureResult r = constant_curvature_test(env.context(), sc.samples, sc.seed, tols);
        json data{{"constant", r.constant},
                  {"kappa", r.kappa},
                  {"max_deviation", r.max_deviation},
                  {"samples", r.samples}};
        if (r.witness) data["witness_kind"] = r.witness->kind;
        return {r.constant, data};
    }
    if (name == "einstein") {
        EinsteinResult r = einstein_check(env.context(), tols);
        return {r.proportional,
                json{{"c", r.c}, {"residual", r.residual}, {"killing_degenerate", r.killing_degenerate}}};
    }

    if (name == "frame") {
        PointFrame frame = frame_at(*sc.immersion, sc.base_point, tols);
        json eps = json::array();
        for (int j = 0; j < static_cast<int>(frame.tangent.size()); ++j)
            eps.push_back(frame.tangent_form.gram()(j, j) >= 0 ? 1 : -1);
        return {true, json{{"tangent_dim", frame.tangent.size()},
                           {"codim", frame.normal.size()},
                           {"tangent_signs", eps}}};
    }
    if (name == "prop6") {
        Prop6Crossval r = prop6_crossval(*sc.immersion, sc.base_point, tols);
        bool ok = r.max_entry_diff <= tols.tol_fd && r.richardson_ratio >= 3.0;
        return {ok, json{{"max_entry_diff", r.max_entry_diff},
                         {"richardson_ratio", r.richardson_ratio},
                         {"self_adjoint_residual", r.self_adjoint_residual}}};
    }
    if (name == "gauss_independence") {
        Matrix base = gauss_term_from_immersion(*sc.immersion, sc.base_point, tols.fd_step, nullptr, tols);
        // An alternative unit-normal extension with the same value at the
        // base point: drift the projection targets along the source axes.
        std::mt19937_64 rng(sc.seed + 97);
        std::normal_distribution<double> dist(0.0, 1.0);
        NormalDrift drift;
        for (int j = 0; j < sc.immersion->source_dim; ++j) {
            Vector v(sc.algebra.dim());
            for (int k = 0; k < sc.algebra.dim(); ++k) v(k) = 0.3 * dist(rng);
            drift.vectors.push_back(v);
        }
        Matrix alt = gauss_term_from_immersion(*sc.immersion, sc.base_point, tols.fd_step, &drift, tols);
        double diff = (base - alt).cwiseAbs().maxCoeff();
        return {diff <= tols.tol_fd, json{{"max_difference", diff}}};
    }

    // Germ checks (shared by germ and immersion targets).
    if (name == "prop9") {
        Germ& g = env.germ_data();
        Prop9Result r = verify_prop9(g, tols);
        double gate = g.fd_backed ? tols.fd_verdict : tols.tol;
        bool ok = r.closed_normal && std::max(r.k_minus_alpha_sq, r.tangent_invariance_residual) <= gate;
        return {ok, json{{"closed_normal", r.closed_normal},
                         {"normal_closure_residual", r.normal_closure_residual},
                         {"k_minus_alpha_sq", r.k_minus_alpha_sq},
                         {"tangent_invariance_residual", r.tangent_invariance_residual}}};
    }
    if (name == "corollary11") {
        Corollary11Result r = check_corollary11(env.germ_data(), tols);
        return {r.pass, json{{"eigenvalues_negative", r.eigenvalues_negative},
                             {"multiplicities_even", r.multiplicities_even},
                             {"alpha_skew_residual", r.alpha_skew_residual},
                             {"profile", profile_json(r.profile)}}};
    }
    if (name == "prop4") {
        Prop4Result r = check_prop4(env.germ_data(), tols);
        return {r.equivalence, json{{"commute", r.commute},
                                    {"kernel_invariant", r.kernel_invariant},
                                    {"commute_residual", r.commute_residual},
                                    {"kernel_residual", r.kernel_residual},
                                    {"lambda", r.lambda}}};
    }
    if (name == "umbilic") {
        UmbilicResult r = check_umbilic(env.germ_data(), tols);
        return {r.pass, json{{"c", r.c},
                             {"umbilic_residual", r.umbilic_residual},
                             {"max_coefficient_residual", r.max_coefficient_residual},
                             {"pair_count", r.pair_count}}};
    }
    if (name == "theorem1") {
        Theorem1Result r = verify_theorem1(env.germ_data(), tols);
        return {r.agree, json{{"commute_AK", r.commute_AK},
                              {"coefficients_vanish", r.coefficients_vanish},
                              {"gauss_preserves_eigenspaces", r.gauss_preserves_eigenspaces},
                              {"commute_residual", r.commute_residual},
                              {"ii_residual", r.ii_residual},
                              {"iii_residual", r.iii_residual},
                              {"min_cluster_gap", r.min_cluster_gap},
                              {"pair_count", r.pair_count},
                              {"positive_definite", r.positive_definite}}};
    }
    if (name == "adapted") {
        AdaptednessReport r = check_adapted(env.germ_data(), tols);
        json data{{"closed_normal", r.closed_normal},
                  {"abelian_normal", r.abelian_normal},
                  {"K_tangent_invariant", r.K_tangent_invariant},
                  {"K_diagonalizable", r.K_diagonalizable},
                  {"commute_AK", r.commute_AK},
                  {"K_minus_alpha_sq_residual", r.K_minus_alpha_sq_residual},
                  {"multiplicity_profile", profile_json(r.multiplicity_profile)},
                  {"closure_residual", r.closure_residual},
                  {"abelian_residual", r.abelian_residual},
                  {"tangent_invariance_residual", r.tangent_invariance_residual},
                  {"commute_residual", r.commute_residual},
                  {"alpha_skew_residual", r.alpha_skew_residual},
                  {"adapted", r.adapted()}};
        data["thm1_ii_residual"] = r.thm1_ii_residual ? json(*r.thm1_ii_residual) : json(nullptr);
        data["thm1_iii_residual"] = r.thm1_iii_residual ? json(*r.thm1_iii_residual) : json(nullptr);
        return {r.adapted(), data};
    }
    if (name == "sign_convention") {
        SignConventionResult r = check_sign_convention(env.germ_data(), tols);
        return {r.pass, json{{"max_residual", r.max_residual}}};
    }
    if (name == "shape") {
        // Unlike `adapted`, this routes through the consistency gate: a normal
        // term whose self-adjointness defect exceeds the verdict scale throws.
        ShapeOperatorResult r = shape_operator(env.germ_data(), tols);
        return {true, json{{"self_adjoint_residual", r.self_adjoint_residual},
                           {"trace", r.a.matrix.trace()}}};
    }

    schema_fail("check '" + name + "' has no evaluator");
}

} // namespace

ScenarioReport run_scenario(const Scenario& sc) {
    ScenarioReport rep;
    rep.name = sc.name;
    rep.algebra = sc.algebra_id.empty() ? "custom" : sc.algebra_id;
    rep.target = sc.target;
    rep.ok = true;

    Env env(sc);
    for (const ScenarioCheck& c : sc.checks) {
        CheckOutcome o;
        o.name = c.name;
        o.expect = c.expect;
        o.data = json::object();
        try {
            auto [pass, data] = eval_check(c.name, env);
            o.outcome = pass ? "pass" : "fail";
            o.data = std::move(data);
        } catch (const Error& e) {
            o.outcome = "error";
            o.message = e.what();
        }
        o.ok = (o.outcome == c.expect);
        if (!o.ok) rep.ok = false;
        rep.checks.push_back(std::move(o));
    }
    return rep;
}

nlohmann::json scenario_report_json(const ScenarioReport& rep) {
    json j;
    j["version"] = "1";
    j["scenario"] = rep.name;
    j["algebra"] = rep.algebra;
    j["target"] = rep.target;
    j["ok"] = rep.ok;
    json rows = json::array();
    for (const CheckOutcome& c : rep.checks) {
        json row;
        row["name"] = c.name;
        row["expect"] = c.expect;
        row["outcome"] = c.outcome;
        row["ok"] = c.ok;
        if (!c.message.empty()) row["message"] = c.message;
        row["data"] = c.data;
        rows.push_back(row);
    }
    j["checks"] = rows;
    return j;
}

std::string scenario_report_text(const ScenarioReport& rep) {
    std::ostringstream os;
    os << "scenario: " << (rep.name.empty() ? "(unnamed)" : rep.name) << "  [algebra " << rep.algebra
       << ", target " << rep.target << "]\n";
    for (const CheckOutcome& c : rep.checks) {
        os << (c.ok ? "  [ OK ] " : "  [MISMATCH] ") << c.name << ": " << c.outcome;
        if (c.expect != "pass" || !c.ok) os << " (expected " << c.expect << ")";
        if (!c.message.empty()) os << " - " << c.message;
        if (!c.data.empty()) os << "  " << c.data.dump();
        os << "\n";
    }
    os << (rep.ok ? "result: all expectations met\n" : "result: expectation mismatch\n");
    return os.str();
}

} // namespace liecurv
