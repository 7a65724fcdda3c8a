#include "liecurv/catalog.hpp"

#include <array>
#include <cstdlib>

namespace liecurv {

namespace {

using Table = std::vector<std::vector<std::vector<double>>>;

Table empty_table(int n) {
    return Table(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
}

// [e_i, e_j] = e_k cyclically (the epsilon-tensor constants shared by su2 and so3).
void fill_epsilon(Table& t, int offset) {
    t[offset + 0][offset + 1][offset + 2] = 1.0;
    t[offset + 1][offset + 2][offset + 0] = 1.0;
    // stored triangle is i<j only; [e2,e0] = e1 enters as [e0,e2] = -e1
    t[offset + 0][offset + 2][offset + 1] = -1.0;
}

LieAlgebra make_su2_like(int extra_central = 0) {
    const int n = 3 + extra_central;
    Table t = empty_table(n);
    fill_epsilon(t, 0);
    return LieAlgebra(n, t);
}

LieAlgebra make_sl2r() {
    // basis (H, E, F): [H,E] = 2E, [H,F] = -2F, [E,F] = H
    Table t = empty_table(3);
    t[0][1][1] = 2.0;
    t[0][2][2] = -2.0;
    t[1][2][0] = 1.0;
    return LieAlgebra(3, t);
}

LieAlgebra make_se2() {
    // basis (rotation, translation x, translation y)
    Table t = empty_table(3);
    t[0][1][2] = 1.0;
    t[0][2][1] = -1.0;
    return LieAlgebra(3, t);
}

LieAlgebra make_su2xsu2() {
    Table t = empty_table(6);
    fill_epsilon(t, 0);
    fill_epsilon(t, 3);
    return LieAlgebra(6, t);
}

// Basis A_{ij} = e_i e_j^T - e_j e_i^T for i<j in lexicographic order.
LieAlgebra make_so4() {
    const std::array<std::pair<int, int>, 6> pairs = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    auto index_of = [&](int x, int y, double& sign) {
        if (x == y) return -1;
        sign = x < y ? 1.0 : -1.0;
        if (x > y) std::swap(x, y);
        for (int p = 0; p < 6; ++p)
            if (pairs[p].first == x && pairs[p].second == y) return p;
        return -1;
    };
    Table t = empty_table(6);
    for (int p = 0; p < 6; ++p)
        for (int q = p + 1; q < 6; ++q) {
            const auto [i, j] = pairs[p];
            const auto [k, l] = pairs[q];
            // [A_ij, A_kl] = d_jk A_il - d_ik A_jl - d_jl A_ik + d_il A_jk
            auto add = [&](int x, int y, double coef) {
                double sign = 1.0;
                const int idx = index_of(x, y, sign);
                if (idx >= 0) t[p][q][idx] += coef * sign;
            };
            if (j == k) add(i, l, 1.0);
            if (i == k) add(j, l, -1.0);
            if (j == l) add(i, k, -1.0);
            if (i == l) add(j, k, 1.0);
        }
    return LieAlgebra(6, t);
}

Matrix sl2r_metric(const LieAlgebra& alg, const Tolerances& tols) {
    // Killing form scaled so <H,H> = 1; signature (2,1), constant curvature -1.
    return killing_form(alg, tols).gram() / 8.0;
}

} // namespace

std::vector<std::string> catalog_ids() {
    return {"abelian:n", "su2", "sl2r", "so3", "su2xsu2", "su2xR", "so4", "se2"};
}

CatalogEntry catalog_entry(const std::string& id, const Tolerances& tols) {
    if (id.rfind("abelian:", 0) == 0) {
        const std::string tail = id.substr(8);
        char* end = nullptr;
        const long n = std::strtol(tail.c_str(), &end, 10);
        if (tail.empty() || *end != '\0' || n < 1 || n > LieAlgebra::max_dim)
            fail(ErrorCode::UnknownId, "abelian:n needs 1 <= n <= 32, got '" + id + "'");
        LieAlgebra alg(static_cast<int>(n), empty_table(static_cast<int>(n)));
        return {id, "dim " + std::to_string(n) + ", abelian", alg,
                Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))};
    }
    if (id == "su2")
        return {id, "dim 3, compact simple", make_su2_like(), Matrix::Identity(3, 3)};
    if (id == "so3")
        return {id, "dim 3, compact simple", make_su2_like(), Matrix::Identity(3, 3)};
    if (id == "sl2r") {
        LieAlgebra alg = make_sl2r();
        Matrix metric = sl2r_metric(alg, tols);
        return {id, "dim 3, split simple", alg, metric};
    }
    if (id == "su2xsu2")
        return {id, "dim 6, compact semisimple", make_su2xsu2(), Matrix::Identity(6, 6)};
    if (id == "su2xR")
        return {id, "dim 4, reductive with one-dimensional center", make_su2_like(1), Matrix::Identity(4, 4)};
    if (id == "so4")
        return {id, "dim 6, compact semisimple", make_so4(), Matrix::Identity(6, 6)};
    if (id == "se2")
        return {id, "dim 3, solvable; shipped metric is not ad-invariant (negative-test entry)",
                make_se2(), Matrix::Identity(3, 3)};
    fail(ErrorCode::UnknownId, "unknown catalog algebra '" + id + "'");
}

std::vector<std::string> catalog_listing() {
    std::vector<std::string> rows;
    for (const std::string& id : catalog_ids()) {
        const CatalogEntry e = catalog_entry(id == "abelian:n" ? "abelian:4" : id);
        const std::string desc = id == "abelian:n" ? "parametric, abelian, 1 <= n <= 32" : e.description;
        rows.push_back(id + " (" + desc + ")");
    }
    return rows;
}

MetricLieAlgebra make_metric_algebra(const std::string& id, const Tolerances& tols) {
    CatalogEntry e = catalog_entry(id, tols);
    return MetricLieAlgebra(std::move(e.algebra), BilinearForm(e.default_metric, tols), tols);
}

} // namespace liecurv
