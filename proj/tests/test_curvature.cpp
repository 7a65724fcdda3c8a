#include <doctest.h>

#include <cmath>

#include "liecurv/catalog.hpp"
#include "liecurv/curvature.hpp"

using namespace liecurv;

TEST_CASE("connection and curvature tensor are bracket formulas") {
    CurvatureContext ctx(make_metric_algebra("su2"));
    Vector e0 = Vector::Unit(3, 0), e1 = Vector::Unit(3, 1), e2 = Vector::Unit(3, 2);

    CHECK((ctx.nabla(e0, e1) - 0.5 * e2).norm() < 1e-15);
    CHECK((ctx.nabla(e1, e0) + 0.5 * e2).norm() < 1e-15);
    // R(e0,e1)e1 = (1/4)[e1,[e0,e1]] = (1/4)[e1,e2] = e0/4.
    CHECK((ctx.riem(e0, e1, e1) - 0.25 * e0).norm() < 1e-15);
}

TEST_CASE("sectional curvature of the round three-sphere metric") {
    CurvatureContext ctx(make_metric_algebra("su2"));
    Vector e0 = Vector::Unit(3, 0), e1 = Vector::Unit(3, 1);
    CHECK(sectional(ctx, e0, e1) == doctest::Approx(0.25).epsilon(1e-12));

    // Scaling the metric by 4 scales sectional curvature by 1/4.
    CurvatureContext scaled(catalog_entry("su2").algebra,
                            BilinearForm(4.0 * Matrix::Identity(3, 3)));
    CHECK(sectional(scaled, e0, e1) == doctest::Approx(1.0 / 16.0).epsilon(1e-12));

    // Non-orthonormal spanning pair gives the same plane value.
    CHECK(sectional(ctx, 2.0 * e0 + e1, e1 - e0) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("sl2r carries signature (2,1) and constant curvature minus one") {
    MetricLieAlgebra sl2r = make_metric_algebra("sl2r");
    Signature sig = signature(sl2r.metric);
    CHECK(sig.positive == 2);
    CHECK(sig.negative == 1);

    CurvatureContext ctx(sl2r);
    ConstantCurvatureResult r = constant_curvature_test(ctx, 200, 7);
    CHECK(r.constant);
    CHECK(r.kappa == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(r.samples > 0);
}

TEST_CASE("abelian algebras are flat") {
    CurvatureContext ctx(make_metric_algebra("abelian:3"));
    ConstantCurvatureResult r = constant_curvature_test(ctx, 100, 11);
    CHECK(r.constant);
    CHECK(std::abs(r.kappa) < 1e-12);
    CHECK(r.max_deviation < 1e-12);
}

TEST_CASE("su2 x su2 has non-constant curvature with a witness plane") {
    CurvatureContext ctx(make_metric_algebra("su2xsu2"));
    ConstantCurvatureResult r = constant_curvature_test(ctx, 200, 13);
    CHECK_FALSE(r.constant);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->value > 1e-3);

    // Mixed planes are flat: one vector from each factor commutes.
    Vector u = Vector::Unit(6, 0), v = Vector::Unit(6, 3);
    CHECK(std::abs(sectional(ctx, u, v)) < 1e-14);
}

TEST_CASE("einstein fit against the killing form") {
    EinsteinResult su2 = einstein_check(CurvatureContext(make_metric_algebra("su2")));
    CHECK(su2.proportional);
    CHECK(su2.c == doctest::Approx(-0.25).epsilon(1e-10));
    CHECK(su2.residual < 1e-12);
    CHECK_FALSE(su2.killing_degenerate);

    EinsteinResult prod = einstein_check(CurvatureContext(make_metric_algebra("su2xsu2")));
    CHECK(prod.proportional);
    CHECK(prod.c == doctest::Approx(-0.25).epsilon(1e-10));

    EinsteinResult flat = einstein_check(CurvatureContext(make_metric_algebra("abelian:3")));
    CHECK(flat.killing_degenerate);
    CHECK(ricci_matrix(CurvatureContext(make_metric_algebra("abelian:3"))).norm() < 1e-14);
}

TEST_CASE("curvature axioms hold to machine precision") {
    for (const std::string& id : {"su2", "sl2r", "su2xsu2", "so4"}) {
        AxiomResiduals r = curvature_axiom_residuals(CurvatureContext(make_metric_algebra(id)), 50, 3);
        CHECK(r.pair_symmetry < 1e-12);
        CHECK(r.skew_symmetry < 1e-12);
        CHECK(r.first_bianchi < 1e-12);
    }
}

TEST_CASE("degenerate planes are rejected") {
    CurvatureContext ctx(make_metric_algebra("sl2r"));
    // In the (H, E, F) basis E is null and orthogonal to H, so span{H, E}
    // is a degenerate plane.
    Vector h = Vector::Unit(3, 0), e = Vector::Unit(3, 1);
    CHECK_THROWS_AS(sectional(ctx, h, e), Error);
    try {
        sectional(ctx, h, e);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::DegeneratePlane);
    }
}

TEST_CASE("a non-ad-invariant metric is rejected at construction") {
    CatalogEntry se2 = catalog_entry("se2");
    CHECK_THROWS_AS(CurvatureContext(se2.algebra, BilinearForm(se2.default_metric)), Error);
}

TEST_CASE("jacobi operator along a unit direction") {
    CurvatureContext ctx(make_metric_algebra("su2"));
    JacobiOperatorResult r = jacobi_operator(ctx, Vector::Unit(3, 2));
    REQUIRE(r.op.matrix.rows() == 2);
    CHECK(r.offspace_residual < 1e-13);
    CHECK(r.op.self_adjoint_residual() < 1e-13);
    // K = R(x, .)x = (1/4) ad(x)^2 restricted to the complement: -I/4 here.
    CHECK((r.op.matrix + 0.25 * Matrix::Identity(2, 2)).norm() < 1e-13);
    REQUIRE(r.complement_basis.size() == 2);
    for (const Vector& v : r.complement_basis)
        CHECK(std::abs(ctx.inner(v, Vector::Unit(3, 2))) < 1e-13);
}
