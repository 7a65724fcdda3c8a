#include <doctest.h>

#include <cmath>

#include "liecurv/catalog.hpp"
#include "liecurv/liealg.hpp"

using namespace liecurv;

namespace {

LieAlgebra bracket_table(int dim, std::vector<std::tuple<int, int, Vector>> entries) {
    std::vector<std::vector<std::vector<double>>> table(
        dim, std::vector<std::vector<double>>(dim, std::vector<double>(dim, 0.0)));
    for (auto& [i, j, c] : entries)
        for (int k = 0; k < dim; ++k) table[i][j][k] = c(k);
    return LieAlgebra(dim, table);
}

} // namespace

TEST_CASE("jacobi residual vanishes on catalog algebras and flags a broken table") {
    for (const std::string& id : {"su2", "sl2r", "so3", "su2xsu2", "su2xR", "so4", "se2"})
        CHECK(jacobi_residual(catalog_entry(id).algebra) < 1e-12);

    // [e0,e1] = e2 and [e1,e2] = e1 violate Jacobi on (e0, e1, e2).
    Vector e1 = Vector::Unit(3, 1), e2 = Vector::Unit(3, 2);
    LieAlgebra broken = bracket_table(3, {{0, 1, e2}, {1, 2, e1}});
    CHECK(jacobi_residual(broken) > 0.5);
}

TEST_CASE("killing forms match the frozen values") {
    LieAlgebra su2 = catalog_entry("su2").algebra;
    BilinearForm b = killing_form(su2);
    CHECK((b.gram() + 2.0 * Matrix::Identity(3, 3)).norm() < 1e-12);

    BilinearForm bso3 = killing_form(catalog_entry("so3").algebra);
    CHECK((bso3.gram() + 2.0 * Matrix::Identity(3, 3)).norm() < 1e-12);

    // sl2r in the (H, E, F) basis.
    BilinearForm bsl = killing_form(catalog_entry("sl2r").algebra);
    CHECK(bsl.gram()(0, 0) == doctest::Approx(8.0));
    CHECK(bsl.gram()(1, 2) == doctest::Approx(4.0));
    CHECK(bsl.gram()(1, 1) == doctest::Approx(0.0));
    CHECK(bsl.gram()(2, 2) == doctest::Approx(0.0));

    BilinearForm bso4 = killing_form(catalog_entry("so4").algebra);
    CHECK((bso4.gram() + 4.0 * Matrix::Identity(6, 6)).norm() < 1e-12);

    BilinearForm bab = killing_form(catalog_entry("abelian:3").algebra);
    CHECK(bab.gram().norm() == 0.0);
    CHECK(bab.is_degenerate());
}

TEST_CASE("killing form is ad-invariant on every catalog algebra") {
    for (std::string id : catalog_ids()) {
        if (id == "abelian:n") id = "abelian:4";
        const LieAlgebra alg = catalog_entry(id).algebra;
        CHECK(ad_invariance_residual(alg, killing_form(alg)) < 1e-10);
    }
}

TEST_CASE("the shipped se2 metric fails ad-invariance with residual one") {
    CatalogEntry se2 = catalog_entry("se2");
    CHECK(ad_invariance_residual(se2.algebra, BilinearForm(se2.default_metric)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(make_metric_algebra("se2"), Error);
    try {
        make_metric_algebra("se2");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAdInvariant);
    }
}

TEST_CASE("metric algebra construction validates ad-invariance") {
    CatalogEntry su2 = catalog_entry("su2");
    MetricLieAlgebra mla{su2.algebra, BilinearForm(su2.default_metric)};
    CHECK(mla.dim() == 3);
}

TEST_CASE("subspace closure and abelian residuals") {
    LieAlgebra su2 = catalog_entry("su2").algebra;
    Vector b0 = Vector::Unit(3, 0), b1 = Vector::Unit(3, 1);

    CHECK(closure_residual(su2, Subspace(3, {b0})) < 1e-15);
    CHECK(is_subalgebra(su2, Subspace(3, {b0})));

    // [b0, b1] = b2 sticks out entirely.
    CHECK(closure_residual(su2, Subspace(3, {b0, b1})) == doctest::Approx(1.0));
    CHECK_FALSE(is_subalgebra(su2, Subspace(3, {b0, b1})));
    CHECK(abelian_residual(su2, Subspace(3, {b0, b1})) == doctest::Approx(1.0));

    LieAlgebra prod = catalog_entry("su2xsu2").algebra;
    Subspace cartan(6, {Vector::Unit(6, 0), Vector::Unit(6, 4)});
    CHECK(abelian_residual(prod, cartan) < 1e-15);
    CHECK(is_subalgebra(prod, cartan));
}

TEST_CASE("orthogonal complement is involutive and orthogonal") {
    MetricLieAlgebra su2 = make_metric_algebra("su2");
    Subspace line(3, {Vector::Unit(3, 2)});
    Subspace comp = orthogonal_complement(su2, line);
    REQUIRE(comp.basis().size() == 2);
    for (const Vector& v : comp.basis())
        CHECK(std::abs(su2.metric(v, Vector::Unit(3, 2))) < 1e-12);

    Subspace back = orthogonal_complement(su2, comp);
    REQUIRE(back.basis().size() == 1);
    Vector u = back.basis()[0].normalized();
    CHECK(std::abs(std::abs(u(2)) - 1.0) < 1e-12);
}

TEST_CASE("catalog exposes every advertised id") {
    for (std::string id : catalog_ids()) {
        if (id == "abelian:n") id = "abelian:4";
        CatalogEntry e = catalog_entry(id);
        CHECK(e.id == id);
        CHECK(e.algebra.dim() >= 1);
        CHECK(e.default_metric.rows() == e.algebra.dim());
    }
    CHECK_THROWS_AS(catalog_entry("no-such-algebra"), Error);
    CHECK(catalog_entry("abelian:5").algebra.dim() == 5);
}
