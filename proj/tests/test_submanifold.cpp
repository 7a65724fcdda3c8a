#include <doctest.h>

#include <cmath>
#include <optional>

#include "liecurv/catalog.hpp"
#include "liecurv/germgen.hpp"
#include "liecurv/submanifold.hpp"

using namespace liecurv;

namespace {

template <class F>
std::optional<ErrorCode> thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

Germ su2_equator(const Tolerances& tols = default_tolerances()) {
    // Totally geodesic hypersurface germ: tangent {b0, b1}, eta = b2,
    // W = -alpha so that A = 0.
    Matrix w(2, 2);
    w << 0.0, -0.5, 0.5, 0.0;
    return make_germ(make_metric_algebra("su2", tols),
                     {Vector::Unit(3, 0), Vector::Unit(3, 1)}, Vector::Unit(3, 2), w, tols);
}

} // namespace

TEST_CASE("invariant shape and normal jacobi operators on the su2 equator") {
    Germ g = su2_equator();
    CHECK(g.dim() == 2);
    CHECK(g.codim() == 1);
    CHECK_FALSE(g.fd_backed);
    CHECK(g.verdict_tol(default_tolerances()) == doctest::Approx(1e-6));

    InvariantShapeResult alpha = invariant_shape(g);
    Matrix expected(2, 2);
    expected << 0.0, 0.5, -0.5, 0.0;
    CHECK((alpha.op.matrix - expected).norm() < 1e-13);
    CHECK(alpha.projection_residual < 1e-13);

    NormalJacobiResult k = normal_jacobi(g);
    CHECK((k.op.matrix + 0.25 * Matrix::Identity(2, 2)).norm() < 1e-13);
    CHECK(k.tangent_invariance_residual < 1e-13);

    // lift/project are mutually inverse on tangent coordinates, and project
    // kills the normal direction.
    Vector c(2);
    c << 0.7, -0.4;
    CHECK((g.project(g.lift(c)) - c).norm() < 1e-13);
    CHECK(g.project(g.eta).norm() < 1e-13);
}

TEST_CASE("the equator germ is totally geodesic and fully adapted") {
    Germ g = su2_equator();

    ShapeOperatorResult shape = shape_operator(g);
    CHECK(shape.a.matrix.norm() < 1e-13);
    CHECK(shape.self_adjoint_residual < 1e-13);

    Prop9Result p9 = verify_prop9(g);
    CHECK(p9.closed_normal);
    CHECK(p9.k_minus_alpha_sq < 1e-13);
    CHECK(p9.tangent_invariance_residual < 1e-13);

    Corollary11Result c11 = check_corollary11(g);
    CHECK(c11.pass);
    REQUIRE(c11.profile.size() == 1);
    CHECK(c11.profile[0].first == doctest::Approx(-0.25));
    CHECK(c11.profile[0].second == 2);

    Theorem1Result t1 = verify_theorem1(g);
    CHECK(t1.agree);
    CHECK(t1.commute_AK);
    CHECK(t1.positive_definite);

    UmbilicResult um = check_umbilic(g);
    CHECK(um.pass);
    CHECK(std::abs(um.c) < 1e-13);

    SignConventionResult sign = check_sign_convention(g);
    CHECK(sign.pass);
    CHECK(sign.max_residual < 1e-12);

    AdaptednessReport rep = check_adapted(g);
    CHECK(rep.adapted());
    CHECK(rep.closed_normal);
    CHECK(rep.K_diagonalizable);
}

TEST_CASE("subgroup germs have vanishing invariant shape and gauss term") {
    MetricLieAlgebra su2 = make_metric_algebra("su2");
    Germ g = make_subgroup_germ(su2, {Vector::Unit(3, 2)});
    REQUIRE(g.gauss_term.has_value());
    CHECK(g.gauss_term->norm() == 0.0);
    CHECK(invariant_shape(g).op.matrix.norm() < 1e-13);
    CHECK(shape_operator(g).a.matrix.norm() < 1e-13);

    // A non-subalgebra tangent is rejected.
    auto code = thrown_code([&] {
        make_subgroup_germ(su2, {Vector::Unit(3, 0), Vector::Unit(3, 1)});
    });
    REQUIRE(code.has_value());
    CHECK(*code == ErrorCode::InvalidArgument);
}

TEST_CASE("the designed open germ misses K = alpha^2 by exactly a quarter") {
    Germ g = designed_open_germ();
    Prop9Result r = verify_prop9(g);
    CHECK_FALSE(r.closed_normal);
    CHECK(r.normal_closure_residual > 0.5);
    CHECK(r.k_minus_alpha_sq == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("closed-normal hypotheses are enforced") {
    // Open normal space with an explicit (consistent) Gauss term: alpha = 0
    // on this line germ, so W = 0 passes the consistency gate.
    MetricLieAlgebra su2 = make_metric_algebra("su2");
    Germ open_germ = make_germ(su2, {Vector::Unit(3, 0)}, Vector::Unit(3, 1), Matrix::Zero(1, 1));

    auto t1 = thrown_code([&] { verify_theorem1(open_germ); });
    REQUIRE(t1.has_value());
    CHECK(*t1 == ErrorCode::HypothesisFailed);

    auto um = thrown_code([&] { check_umbilic(open_germ); });
    REQUIRE(um.has_value());
    CHECK(*um == ErrorCode::HypothesisFailed);

    auto c11 = thrown_code([&] { check_corollary11(open_germ); });
    REQUIRE(c11.has_value());
    CHECK(*c11 == ErrorCode::HypothesisFailed);

    // Prop 4 wants dimension three before anything else.
    auto p4 = thrown_code([&] { check_prop4(su2_equator()); });
    REQUIRE(p4.has_value());
    CHECK(*p4 == ErrorCode::HypothesisFailed);
}

TEST_CASE("germ construction rejects malformed data") {
    MetricLieAlgebra su2 = make_metric_algebra("su2");
    MetricLieAlgebra sl2r = make_metric_algebra("sl2r");

    // Null eta (E is null for the sl2r metric and orthogonal to H).
    auto null_eta = thrown_code([&] {
        make_germ(sl2r, {Vector::Unit(3, 0)}, Vector::Unit(3, 1));
    });
    REQUIRE(null_eta.has_value());
    CHECK(*null_eta == ErrorCode::NotUnitNormal);

    // Eta with a tangent component.
    auto oblique = thrown_code([&] {
        make_germ(su2, {Vector::Unit(3, 0)}, Vector::Unit(3, 0) + Vector::Unit(3, 1));
    });
    REQUIRE(oblique.has_value());
    CHECK(*oblique == ErrorCode::NotUnitNormal);

    // Dependent tangent set.
    auto dependent = thrown_code([&] {
        make_germ(su2, {Vector::Unit(3, 0), 2.0 * Vector::Unit(3, 0)}, Vector::Unit(3, 2));
    });
    REQUIRE(dependent.has_value());
    CHECK(*dependent == ErrorCode::LinearlyDependent);

    // Gauss term of the wrong size.
    auto bad_gauss = thrown_code([&] {
        make_germ(su2, {Vector::Unit(3, 0), Vector::Unit(3, 1)}, Vector::Unit(3, 2),
                  Matrix::Zero(3, 3));
    });
    REQUIRE(bad_gauss.has_value());
    CHECK(*bad_gauss == ErrorCode::DimensionMismatch);

    // The germ carries no Gauss term: shape-dependent checks refuse.
    Germ bare = make_germ(su2, {Vector::Unit(3, 0), Vector::Unit(3, 1)}, Vector::Unit(3, 2));
    auto no_gauss = thrown_code([&] { shape_operator(bare); });
    REQUIRE(no_gauss.has_value());
    CHECK(*no_gauss == ErrorCode::InvalidArgument);
}

TEST_CASE("a symmetric gauss term cannot cancel a nonzero alpha") {
    MetricLieAlgebra su2 = make_metric_algebra("su2");
    Germ g = make_germ(su2, {Vector::Unit(3, 0), Vector::Unit(3, 1)}, Vector::Unit(3, 2),
                       0.2 * Matrix::Identity(2, 2));
    auto code = thrown_code([&] { shape_operator(g); });
    REQUIRE(code.has_value());
    CHECK(*code == ErrorCode::InconsistentGaussTerm);
    // check_adapted deliberately bypasses the gate.
    CHECK_NOTHROW(check_adapted(g));
}

TEST_CASE("line-normal germ in su2 x su2 has the frozen K profile") {
    MetricLieAlgebra prod = make_metric_algebra("su2xsu2");
    std::vector<Vector> tangent;
    for (int i = 1; i < 6; ++i) tangent.push_back(Vector::Unit(6, i));
    Germ g = make_germ(prod, tangent, Vector::Unit(6, 0));

    Corollary11Result r = check_corollary11(g);
    CHECK(r.pass);
    CHECK(r.eigenvalues_negative);
    CHECK(r.multiplicities_even);
    REQUIRE(r.profile.size() == 2);
    CHECK(r.profile[0].first == doctest::Approx(-0.25));
    CHECK(r.profile[0].second == 2);
    CHECK(r.profile[1].first == doctest::Approx(0.0));
    CHECK(r.profile[1].second == 3);
}

TEST_CASE("timelike-eta germ in sl2r satisfies the sign convention") {
    MetricLieAlgebra sl2r = make_metric_algebra("sl2r");
    Vector t0 = Vector::Unit(3, 0);
    Vector t1 = Vector::Unit(3, 1) + Vector::Unit(3, 2);
    Vector eta = Vector::Unit(3, 1) - Vector::Unit(3, 2);
    Germ g = make_germ(sl2r, {t0, t1}, eta);
    CHECK(sl2r.metric(g.eta, g.eta) == doctest::Approx(-1.0));

    Corollary11Result r = check_corollary11(g);
    REQUIRE(r.profile.size() == 1);
    CHECK(r.profile[0].first == doctest::Approx(-1.0));
    CHECK(r.profile[0].second == 2);

    SignConventionResult sign = check_sign_convention(g);
    CHECK(sign.pass);
    CHECK(sign.max_residual < 1e-9);
}

TEST_CASE("random closed germs satisfy the square law") {
    for (const std::string& id : closed_germ_algebras()) {
        for (const Germ& g : random_closed_germs(id, 5, 99)) {
            Prop9Result r = verify_prop9(g);
            CHECK(r.closed_normal);
            CHECK(r.k_minus_alpha_sq < 1e-9);
        }
    }
}

TEST_CASE("two-dimensional closed germs are always adapted") {
    for (const Germ& g : random_two_dim_germs(8, 17)) {
        AdaptednessReport rep = check_adapted(g);
        CHECK(rep.adapted());
        CHECK(rep.closed_normal);
    }
}

TEST_CASE("designed theorem-one germs hit both sides of the equivalence") {
    int adapted_seen = 0, broken_seen = 0;
    for (const DesignedGerm& d : theorem1_germs("su2xsu2", 4, 31)) {
        Theorem1Result r = verify_theorem1(d.germ);
        CHECK(r.agree);
        CHECK(r.commute_AK == d.adapted);
        CHECK(r.coefficients_vanish == d.adapted);
        CHECK(r.gauss_preserves_eigenspaces == d.adapted);
        CHECK(r.pair_count > 0);
        (d.adapted ? adapted_seen : broken_seen)++;
    }
    CHECK(adapted_seen > 0);
    CHECK(broken_seen > 0);
}

TEST_CASE("prop 4 equivalence holds on kernel-respecting and kernel-breaking germs") {
    int respects = 0, breaks = 0;
    for (const DesignedGerm& d : prop4_germs("su2xsu2", 4, 53)) {
        Prop4Result r = check_prop4(d.germ);
        CHECK(r.equivalence);
        CHECK(r.commute == d.adapted);
        CHECK(r.kernel_invariant == d.adapted);
        CHECK(std::abs(r.lambda) > 1e-3);
        (d.adapted ? respects : breaks)++;
    }
    CHECK(respects > 0);
    CHECK(breaks > 0);
}

TEST_CASE("umbilic batteries pass with nonvacuous eigenvalue pairs") {
    for (const Germ& g : umbilic_germs(6, 71)) {
        UmbilicResult r = check_umbilic(g);
        CHECK(r.pass);
        CHECK(r.pair_count > 0);
        CHECK(std::abs(r.c) > 0.4);
    }
    for (const Germ& g : sphere_umbilic_germs()) {
        CHECK(g.fd_backed);
        UmbilicResult r = check_umbilic(g);
        CHECK(r.pass);
    }
}

TEST_CASE("immersion germs agree with the documented coefficient derivatives") {
    auto model = catalog_model("su2");
    Vector lin(2);
    lin << 0.05, -0.02;
    Matrix quad(2, 2);
    quad << 0.4, 0.1, 0.1, -0.3;
    Immersion graph = make_exp_graph(model, {Vector::Unit(3, 0), Vector::Unit(3, 1)},
                                     Vector::Unit(3, 2), 0.0, lin, quad);
    Vector u0(2);
    u0 << 0.03, -0.02;

    Germ g = germ_from_immersion(graph, u0);
    CHECK(g.fd_backed);
    CHECK(g.verdict_tol(default_tolerances()) == doctest::Approx(1e-4));

    // The stored W reproduces eps_h * d_j <N, t_h>.
    PointFrame f = frame_at(graph, u0);
    Matrix w = gauss_term_from_immersion(graph, u0, 1e-4);
    REQUIRE(g.gauss_term.has_value());
    CHECK((*g.gauss_term - w).cwiseAbs().maxCoeff() < 1e-8);
    for (int hh = 0; hh < 2; ++hh) {
        double eps = f.tangent_form.gram()(hh, hh);
        for (int j = 0; j < 2; ++j) {
            double d = normal_coefficient_derivative(graph, u0, f.eta, f.tangent[j],
                                                     f.tangent[hh], 1e-4);
            CHECK(std::abs(eps * d - w(hh, j)) < 1e-9);
        }
    }

    // Independence of the unit normal extension.
    NormalDrift drift{{0.3 * Vector::Unit(3, 0), -0.2 * Vector::Unit(3, 1)}};
    Matrix w_drift = gauss_term_from_immersion(graph, u0, 1e-4, &drift);
    CHECK((w - w_drift).cwiseAbs().maxCoeff() < 1e-5);

    // Immersion-backed theorem statement (vacuous pairs: K is scalar here).
    Theorem1Result t1 = verify_theorem1(g, graph, u0, 1e-4);
    CHECK(t1.agree);
}

TEST_CASE("the two shape-operator routes agree on generated immersions") {
    std::vector<ImmersionCase> cases = crossval_immersions(5);
    REQUIRE(!cases.empty());
    const ImmersionCase& c = cases.front();
    Prop6Crossval r = prop6_crossval(c.immersion, c.u0);
    CHECK(r.max_entry_diff < 5e-6);
    CHECK(r.richardson_ratio >= 3.0);
    CHECK(r.self_adjoint_residual < 1e-4);
    CHECK(r.a_gauss_route.rows() == r.a_derivative_route.rows());
}
