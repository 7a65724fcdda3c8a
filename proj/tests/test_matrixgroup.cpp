#include <doctest.h>

#include <cmath>

#include "liecurv/catalog.hpp"
#include "liecurv/matrixgroup.hpp"
#include "liecurv/submanifold.hpp"

using namespace liecurv;

TEST_CASE("matrix models reproduce the abstract structure constants") {
    for (const std::string& id : {"su2", "sl2r", "so3", "su2xsu2", "su2xR", "so4", "abelian:3"}) {
        auto model = catalog_model(id);
        CHECK(model->structure_residual() < 1e-12);
        CHECK(model->dim() == catalog_entry(id).algebra.dim());
    }
    CHECK_THROWS_AS(catalog_model("no-such-group"), Error);
}

TEST_CASE("embed and coordinates are mutually inverse on the algebra span") {
    auto model = catalog_model("su2");
    Vector x(3);
    x << 0.3, -1.2, 0.7;
    double residual = -1.0;
    Vector back = model->coordinates(model->embed(x), &residual);
    CHECK((back - x).norm() < 1e-13);
    CHECK(residual < 1e-13);
}

TEST_CASE("su2 one-parameter subgroups close up at 4 pi") {
    auto model = catalog_model("su2");
    Matrix period = group_exp(*model, Vector::Unit(3, 0), 4.0 * M_PI);
    CHECK((period - Matrix::Identity(period.rows(), period.cols())).norm() < 1e-10);
    // Half the period is the central element -I.
    Matrix half = group_exp(*model, Vector::Unit(3, 0), 2.0 * M_PI);
    CHECK((half + Matrix::Identity(half.rows(), half.cols())).norm() < 1e-10);
}

TEST_CASE("group_exp rejects arguments beyond the norm bound") {
    auto model = catalog_model("su2");
    CHECK_THROWS_AS(group_exp(*model, Vector::Unit(3, 0), 1e4), Error);
    try {
        group_exp(*model, Vector::Unit(3, 0), 1e4);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ExpBound);
    }
}

TEST_CASE("left log derivative recovers chart generators at the origin") {
    auto model = catalog_model("su2");
    Vector g0 = Vector::Unit(3, 0), g1 = Vector::Unit(3, 1);
    Immersion chart = make_exp_chart(model, {g0, g1});
    Vector u0 = Vector::Zero(2);

    LogDerivative d0 = left_log_derivative(chart, u0, 0, 1e-5);
    LogDerivative d1 = left_log_derivative(chart, u0, 1, 1e-5);
    CHECK((d0.coords - g0).norm() < 1e-9);
    CHECK((d1.coords - g1).norm() < 1e-9);
    CHECK(d0.off_residual < 1e-9);

    // Away from the origin the generators mix through the adjoint, but the
    // derivative stays inside the algebra and the tangent plane stays
    // two-dimensional.
    Vector u(2);
    u << 0.4, -0.3;
    LogDerivative far = left_log_derivative(chart, u, 0, 1e-5);
    CHECK(far.off_residual < 1e-8);
    CHECK(far.coords.norm() > 0.5);
}

TEST_CASE("frames are orthonormal and adapted") {
    auto model = catalog_model("su2");
    Immersion chart = make_exp_chart(model, {Vector::Unit(3, 0), Vector::Unit(3, 1)});
    Vector u0(2);
    u0 << 0.1, -0.2;
    PointFrame f = frame_at(chart, u0);

    REQUIRE(f.tangent.size() == 2);
    REQUIRE(f.normal.size() == 1);
    const BilinearForm& g = model->metric_algebra().metric;
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(std::abs(g(f.tangent[i], f.tangent[i])) - 1.0) < 1e-10);
        CHECK(std::abs(g(f.tangent[i], f.eta)) < 1e-10);
    }
    CHECK(std::abs(g(f.tangent[0], f.tangent[1])) < 1e-10);
    CHECK(std::abs(std::abs(g(f.eta, f.eta)) - 1.0) < 1e-10);
    CHECK((f.eta - f.normal[0]).norm() < 1e-14);
}

TEST_CASE("exp-graph height function uses the documented quadratic form") {
    auto model = catalog_model("abelian:3");
    Vector lin(2);
    lin << 0.2, -0.1;
    Matrix quad(2, 2);
    quad << 0.5, 0.1, 0.1, -0.3;
    Immersion graph = make_exp_graph(model, {Vector::Unit(3, 0), Vector::Unit(3, 1)},
                                     Vector::Unit(3, 2), 0.07, lin, quad);
    Vector u(2);
    u << 0.3, 0.4;
    // The abelian model is diagonal, so the last log-coordinate of F(u) is
    // exactly f(u) = c0 + <lin,u> + u^T quad u / 2.
    double f = 0.07 + lin.dot(u) + 0.5 * u.dot(quad * u);
    Matrix p = evaluate(graph, u);
    CHECK(std::log(p(2, 2)) == doctest::Approx(f).epsilon(1e-12));
}

TEST_CASE("paraboloid normal term matches the closed form") {
    // Height f = ||u||^2 / 2 over an abelian ambient: the normal term in the
    // chart basis is -<eta, e3> * I at the apex.
    auto model = catalog_model("abelian:3");
    Immersion par = make_exp_graph(model, {Vector::Unit(3, 0), Vector::Unit(3, 1)},
                                   Vector::Unit(3, 2), 0.0, Vector::Zero(2),
                                   Matrix::Identity(2, 2));
    Vector u0 = Vector::Zero(2);
    PointFrame f = frame_at(par, u0);
    double s = f.eta(2);
    REQUIRE(std::abs(s) == doctest::Approx(1.0).epsilon(1e-12));

    Matrix w = gauss_term_from_immersion(par, u0, 1e-4);
    CHECK((w + s * Matrix::Identity(2, 2)).norm() < 1e-5);
}

TEST_CASE("spheres are umbilic with shape eigenvalue one over the radius") {
    auto model = catalog_model("abelian:3");
    double radius = 0.8;
    Vector center(3);
    center << 0.1, -0.05, 0.2;
    Immersion sph = make_sphere(model, radius, center, Vector::Unit(3, 2));
    Vector u0(2);
    u0 << 0.25, -0.2;

    PointFrame f = frame_at(sph, u0);
    Matrix p = evaluate(sph, u0);
    Vector point(3);
    point << std::log(p(0, 0)), std::log(p(1, 1)), std::log(p(2, 2));
    CHECK((point - center).norm() == doctest::Approx(radius).epsilon(1e-12));
    Vector radial = (point - center) / radius;
    double s = f.eta.dot(radial);
    REQUIRE(std::abs(s) == doctest::Approx(1.0).epsilon(1e-8));

    Germ germ = germ_from_immersion(sph, u0);
    ShapeOperatorResult shape = shape_operator(germ);
    CHECK((shape.a.matrix - (s / radius) * Matrix::Identity(2, 2)).norm() < 1e-5);
}

TEST_CASE("family listing names the three constructors") {
    auto names = immersion_family_listing();
    REQUIRE(names.size() == 3);
    bool chart = false, graph = false, sphere = false;
    for (const std::string& n : names) {
        chart |= n.find("exp-chart") != std::string::npos;
        graph |= n.find("exp-graph") != std::string::npos;
        sphere |= n.find("sphere") != std::string::npos;
    }
    CHECK(chart);
    CHECK(graph);
    CHECK(sphere);
}
