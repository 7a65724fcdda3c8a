#include <doctest.h>

#include <cmath>

#include "liecurv/semilinear.hpp"

using namespace liecurv;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

} // namespace

TEST_CASE("signature counts inertia and rejects degenerate forms") {
    Matrix g = Matrix::Identity(3, 3);
    g(2, 2) = -1.0;
    Signature s = signature(BilinearForm(g));
    CHECK(s.positive == 2);
    CHECK(s.negative == 1);

    Matrix d = Matrix::Identity(2, 2);
    d(1, 1) = 0.0;
    BilinearForm degenerate(d);
    CHECK(degenerate.is_degenerate());
    CHECK_THROWS_AS(signature(degenerate), Error);
}

TEST_CASE("orthonormalize produces a unit diagonal Gram matrix") {
    Matrix g = Matrix::Identity(3, 3);
    g(0, 0) = -1.0;
    BilinearForm form(g);

    std::vector<Vector> raw = {Vector::Zero(3), Vector::Zero(3), Vector::Zero(3)};
    raw[0] << 0.3, 1.1, -0.2;
    raw[1] << -0.7, 0.4, 0.9;
    raw[2] << 1.2, 0.1, 0.3;
    std::vector<Vector> basis = orthonormalize(form, raw);
    REQUIRE(basis.size() == 3);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            double v = form(basis[i], basis[j]);
            if (i == j)
                CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
            else
                CHECK(std::abs(v) < 1e-12);
        }
    }
}

TEST_CASE("orthonormalize keeps an orthonormal list fixed") {
    BilinearForm form(Matrix::Identity(3, 3));
    std::vector<Vector> input = {Vector::Unit(3, 0), Vector::Unit(3, 1)};
    std::vector<Vector> out = orthonormalize(form, input);
    REQUIRE(out.size() == 2);
    CHECK((out[0] - input[0]).norm() < 1e-15);
    CHECK((out[1] - input[1]).norm() < 1e-15);
}

TEST_CASE("orthonormalize rejects dependent and all-null inputs") {
    BilinearForm euclid(Matrix::Identity(2, 2));
    std::vector<Vector> dependent = {Vector::Unit(2, 0), 2.0 * Vector::Unit(2, 0)};
    CHECK_THROWS_AS(orthonormalize(euclid, dependent), Error);

    // Hyperbolic plane spanned by two null vectors: nondegenerate span, but
    // every pivot self-product vanishes; the pivoted sweep reports that
    // rather than dividing by ~0.
    BilinearForm hyperbolic(mat2(0, 1, 1, 0));
    std::vector<Vector> nulls = {Vector::Unit(2, 0), Vector::Unit(2, 1)};
    try {
        orthonormalize(hyperbolic, nulls);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateSubspace);
    }
}

TEST_CASE("eigen_orthonormal sorts, reconstructs, and clusters") {
    Matrix m(3, 3);
    m << 2, 0, 0,
         0, 1, 0.3,
         0, 0.3, 1;
    Operator op{m, BilinearForm(Matrix::Identity(3, 3))};
    CHECK(op.self_adjoint_residual() < 1e-15);

    EigenDecomposition eig = eigen_orthonormal(op);
    REQUIRE(eig.diagonalizable);
    REQUIRE(eig.eigenvalues.size() == 3);
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.7));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.3));
    CHECK(eig.eigenvalues[2] == doctest::Approx(2.0));
    for (int i = 0; i < 3; ++i) {
        Vector r = m * eig.eigenbasis[i] - eig.eigenvalues[i] * eig.eigenbasis[i];
        CHECK(r.norm() < 1e-9);
        for (int j = i + 1; j < 3; ++j)
            CHECK(std::abs(op.form(eig.eigenbasis[i], eig.eigenbasis[j])) < 1e-9);
    }

    Matrix twin = Matrix::Identity(3, 3);
    twin(2, 2) = 2.0;
    EigenDecomposition teig = eigen_orthonormal(Operator{twin, BilinearForm(Matrix::Identity(3, 3))});
    REQUIRE(teig.clusters.size() == 2);
    CHECK(teig.clusters[0].size() == 2);
    CHECK(teig.clusters[1].size() == 1);
    CHECK(teig.cluster_value(0) == doctest::Approx(1.0));
    CHECK(teig.cluster_value(1) == doctest::Approx(2.0));
}

TEST_CASE("eigen_orthonormal rejects non-self-adjoint input up front") {
    // Symmetric matrix, but self-adjointness is relative to the form, and
    // diag(-1, 1) flips one row's sign.
    Operator op{mat2(0, 1, 1, 0), BilinearForm(mat2(-1, 0, 0, 1))};
    CHECK(op.self_adjoint_residual() > 1.0);
    try {
        eigen_orthonormal(op);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSelfAdjoint);
    }
}

TEST_CASE("complex spectrum reports as non-diagonalizable, not as an error") {
    // Rotation generator: self-adjoint for diag(1,-1) yet without real
    // eigenvalues.
    Operator op{mat2(0, 1, -1, 0), BilinearForm(mat2(1, 0, 0, -1))};
    CHECK(op.self_adjoint_residual() < 1e-15);
    EigenDecomposition eig = eigen_orthonormal(op);
    CHECK_FALSE(eig.diagonalizable);
    CHECK(eig.eigenbasis.empty());
}

TEST_CASE("commute is symmetric and finds a shared eigenbasis") {
    BilinearForm form(Matrix::Identity(3, 3));
    Matrix a(3, 3), b(3, 3);
    a << 1, 0, 0, 0, 2, 0, 0, 0, 2;
    b << 3, 0, 0, 0, 4, 1, 0, 1, 4;
    Operator oa{a, form}, ob{b, form};

    CommuteResult r1 = commute(oa, ob);
    CommuteResult r2 = commute(ob, oa);
    CHECK(r1.commute);
    CHECK(r2.commute);
    CHECK(r1.residual == doctest::Approx(r2.residual));
    REQUIRE(r1.shared_basis.has_value());
    REQUIRE(r1.shared_basis->size() == 3);
    for (const Vector& v : *r1.shared_basis) {
        double la = v.dot(a * v) / v.squaredNorm();
        double lb = v.dot(b * v) / v.squaredNorm();
        CHECK((a * v - la * v).norm() < 1e-9);
        CHECK((b * v - lb * v).norm() < 1e-9);
    }
}

TEST_CASE("commute separates commuting from non-commuting pairs") {
    BilinearForm form(Matrix::Identity(2, 2));
    Operator a{mat2(1, 0, 0, 2), form};
    Operator b{mat2(0, 1, 1, 0), form};
    CommuteResult r = commute(a, b);
    CHECK_FALSE(r.commute);
    CHECK(r.residual == doctest::Approx(std::sqrt(2.0)));
}
