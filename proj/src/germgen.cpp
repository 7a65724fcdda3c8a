#include "liecurv/germgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "liecurv/catalog.hpp"

namespace liecurv {
namespace {

using Rng = std::mt19937_64;

double unif(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

int pick(Rng& rng, int n) {
    std::uniform_int_distribution<int> d(0, n - 1);
    return d(rng);
}

Vector gauss_vector(Rng& rng, int n) {
    std::normal_distribution<double> d(0.0, 1.0);
    Vector v(n);
    for (int j = 0; j < n; ++j) v(j) = d(rng);
    return v;
}

Matrix gauss_matrix(Rng& rng, int rows, int cols) {
    std::normal_distribution<double> d(0.0, 1.0);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = d(rng);
    return m;
}

Vector unit(int n, int k) {
    Vector v = Vector::Zero(n);
    v(k) = 1.0;
    return v;
}

/// Random unit (|<v,v>| = 1) vector in the span, rejecting near-null draws.
Vector random_unit_in(const MetricLieAlgebra& mla, const std::vector<Vector>& span_basis, Rng& rng) {
    for (int tries = 0; tries < 256; ++tries) {
        Vector v = Vector::Zero(mla.dim());
        Vector c = gauss_vector(rng, static_cast<int>(span_basis.size()));
        for (std::size_t k = 0; k < span_basis.size(); ++k) v += c(k) * span_basis[k];
        if (v.norm() < 1e-6) continue;
        v.normalize();
        double q = mla.metric(v, v);
        if (std::abs(q) >= 0.05) return v / std::sqrt(std::abs(q));
    }
    fail(ErrorCode::NumericalCheck, "could not draw a non-null unit vector in the subspace");
}

/// Random well-conditioned recombination of a basis.
std::vector<Vector> mixed_basis(const std::vector<Vector>& basis, Rng& rng) {
    const int m = static_cast<int>(basis.size());
    for (int tries = 0; tries < 64; ++tries) {
        Matrix mix = gauss_matrix(rng, m, m);
        Eigen::JacobiSVD<Matrix> svd(mix);
        if (svd.singularValues()(m - 1) < 0.1 * svd.singularValues()(0)) continue;
        std::vector<Vector> out(m);
        for (int j = 0; j < m; ++j) {
            out[j] = Vector::Zero(basis[0].size());
            for (int k = 0; k < m; ++k) out[j] += mix(k, j) * basis[k];
        }
        return out;
    }
    return basis;
}

Vector embed_pair(const Vector& left, const Vector& right) {
    Vector v(6);
    v << left, right;
    return v;
}

/// One bracket-closed normal-space draw. Families rotate per algebra so the
/// batteries cover each configuration evenly. Every returned span is a
/// subalgebra by construction; a residual check downstream enforces it.
int family_count(const std::string& id) {
    if (id == "su2xsu2") return 7;
    if (id == "so4") return 6;
    if (id == "su2xR") return 4;
    return 1;
}

std::vector<Vector> sample_normal_space(const std::string& id, int family,
                                        const MetricLieAlgebra& mla, Rng& rng) {
    const int n = mla.dim();
    auto whole = [&] {
        std::vector<Vector> b;
        for (int k = 0; k < n; ++k) b.push_back(unit(n, k));
        return b;
    };
    auto su2_span = [&](int base) {
        return std::vector<Vector>{unit(n, base), unit(n, base + 1), unit(n, base + 2)};
    };

    if (id == "su2" || id == "so3" || id == "sl2r")
        return {random_unit_in(mla, whole(), rng)};

    if (id.rfind("abelian", 0) == 0) {
        int dim = 1 + pick(rng, n - 1);
        std::vector<Vector> b;
        for (int k = 0; k < dim; ++k) b.push_back(gauss_vector(rng, n));
        return b;
    }

    if (id == "su2xsu2") {
        MetricLieAlgebra su2 = make_metric_algebra("su2");
        switch (family) {
            case 0: return {random_unit_in(mla, whole(), rng)};
            case 1: return su2_span(0);
            case 2: return su2_span(3);
            case 3: {
                std::vector<Vector> b;
                for (int k = 0; k < 3; ++k) b.push_back(embed_pair(unit(3, k), unit(3, k)) / std::sqrt(2.0));
                return b;
            }
            case 4: {
                auto b = su2_span(0);
                b.push_back(embed_pair(Vector::Zero(3), random_unit_in(su2, {unit(3, 0), unit(3, 1), unit(3, 2)}, rng)));
                return b;
            }
            case 5: {
                auto b = su2_span(3);
                b.push_back(embed_pair(random_unit_in(su2, {unit(3, 0), unit(3, 1), unit(3, 2)}, rng), Vector::Zero(3)));
                return b;
            }
            default: {
                Vector x = gauss_vector(rng, 3), y = gauss_vector(rng, 3);
                return {embed_pair(x, Vector::Zero(3)), embed_pair(Vector::Zero(3), y)};
            }
        }
    }

    if (id == "so4") {
        // Basis order: A01, A02, A03, A12, A13, A23.
        const int blocks[4][3] = {{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}};
        const int cartan[3][2] = {{0, 5}, {1, 4}, {2, 3}};
        auto self_dual = [&](double s) {
            // s = +1: span{A01+A23, A02-A13, A03+A12}; s = -1: the opposite ideal.
            std::vector<Vector> b(3, Vector::Zero(6));
            b[0](0) = 1; b[0](5) = s;
            b[1](1) = 1; b[1](4) = -s;
            b[2](2) = 1; b[2](3) = s;
            for (Vector& v : b) v /= std::sqrt(2.0);
            return b;
        };
        switch (family) {
            case 0: return {random_unit_in(mla, whole(), rng)};
            case 1: {
                const int* blk = blocks[pick(rng, 4)];
                return {unit(6, blk[0]), unit(6, blk[1]), unit(6, blk[2])};
            }
            case 2: return self_dual(1.0);
            case 3: return self_dual(-1.0);
            case 4: {
                const int* cp = cartan[pick(rng, 3)];
                return {unit(6, cp[0]), unit(6, cp[1])};
            }
            default: {
                double s = pick(rng, 2) == 0 ? 1.0 : -1.0;
                auto ideal = self_dual(s);
                auto other = self_dual(-s);
                auto line = random_unit_in(mla, other, rng);
                ideal.push_back(line);
                return ideal;
            }
        }
    }

    if (id == "su2xR") {
        MetricLieAlgebra su2 = make_metric_algebra("su2");
        switch (family) {
            case 0: return {random_unit_in(mla, whole(), rng)};
            case 1: return {unit(4, 0), unit(4, 1), unit(4, 2)};
            case 2: return {unit(4, 3)};
            default: {
                Vector x = random_unit_in(su2, {unit(3, 0), unit(3, 1), unit(3, 2)}, rng);
                Vector in4 = Vector::Zero(4);
                in4.head(3) = x;
                return {in4, unit(4, 3)};
            }
        }
    }

    fail(ErrorCode::UnknownId, "no closed-normal inventory for algebra '" + id + "'");
}

Germ draw_closed_germ(const std::string& id, int family, const MetricLieAlgebra& mla, Rng& rng,
                      const Tolerances& tols) {
    std::vector<Vector> nb = sample_normal_space(id, family, mla, rng);
    Subspace normal_span(mla.dim(), nb);
    if (closure_residual(mla.algebra, normal_span) > tols.tol_closed)
        fail(ErrorCode::NumericalCheck, "sampled normal space is not closed");
    Subspace tangent = orthogonal_complement(mla, normal_span, tols);
    Vector eta = random_unit_in(mla, nb, rng);
    return make_germ(mla, mixed_basis(tangent.basis(), rng), eta, tols);
}

/// Hypersurface germ with a random non-null line normal whose K has at
/// least two distinct nonzero clusters separated by min_gap.
Germ clustered_line_germ(const std::string& id, const MetricLieAlgebra& mla, Rng& rng,
                         const Tolerances& tols, EigenDecomposition* eig_out) {
    const int cartan[3][2] = {{0, 5}, {1, 4}, {2, 3}};
    for (int tries = 0; tries < 128; ++tries) {
        double theta = unif(rng, 0.3, 0.6);
        Vector eta;
        if (id == "su2xsu2") {
            MetricLieAlgebra su2 = make_metric_algebra("su2");
            std::vector<Vector> b3{unit(3, 0), unit(3, 1), unit(3, 2)};
            eta = embed_pair(std::cos(theta) * random_unit_in(su2, b3, rng),
                             std::sin(theta) * random_unit_in(su2, b3, rng));
        } else {
            const int* cp = cartan[pick(rng, 3)];
            eta = std::cos(theta) * unit(6, cp[0]) + std::sin(theta) * unit(6, cp[1]);
        }
        Subspace tangent = orthogonal_complement(mla, Subspace(6, {eta}), tols);
        Germ g = make_germ(mla, mixed_basis(tangent.basis(), rng), eta, tols);

        NormalJacobiResult k = normal_jacobi(g, tols);
        EigenDecomposition eig = eigen_orthonormal(k.op, tols);
        double radius = eig.eigenvalues.cwiseAbs().maxCoeff();
        int nonzero = 0;
        for (int c = 0; c < static_cast<int>(eig.clusters.size()); ++c)
            if (std::abs(eig.cluster_value(c)) > tols.cluster_rel * std::max(1.0, radius)) ++nonzero;
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t c = 1; c < eig.clusters.size(); ++c)
            gap = std::min(gap, eig.cluster_value(static_cast<int>(c)) -
                                    eig.cluster_value(static_cast<int>(c) - 1));
        if (nonzero < 2 || gap < 0.05) continue;
        if (eig_out) *eig_out = eig;
        return g;
    }
    fail(ErrorCode::NumericalCheck, "could not draw a germ with separated K clusters");
}

/// Random symmetric matrix in the K-eigenbasis, cross-cluster entries
/// zeroed; when `break_pair`, one symmetric cross-cluster entry is set to a
/// value in +-[0.05, 0.3]. Returned in tangent coordinates (the eigenbasis
/// here is orthonormal: these germs are Riemannian).
Matrix designed_symmetric(const EigenDecomposition& eig, bool break_pair, Rng& rng) {
    const int m = static_cast<int>(eig.eigenbasis.size());
    Matrix raw = gauss_matrix(rng, m, m);
    Matrix s_hat = 0.35 * (raw + raw.transpose());

    std::vector<int> cluster_of(m);
    for (int c = 0; c < static_cast<int>(eig.clusters.size()); ++c)
        for (int j : eig.clusters[c]) cluster_of[j] = c;
    for (int j = 0; j < m; ++j)
        for (int h = 0; h < m; ++h)
            if (cluster_of[j] != cluster_of[h]) s_hat(j, h) = 0.0;

    if (break_pair) {
        int ca = pick(rng, static_cast<int>(eig.clusters.size()));
        int cb = pick(rng, static_cast<int>(eig.clusters.size()) - 1);
        if (cb >= ca) ++cb;
        int j0 = eig.clusters[ca][pick(rng, static_cast<int>(eig.clusters[ca].size()))];
        int h0 = eig.clusters[cb][pick(rng, static_cast<int>(eig.clusters[cb].size()))];
        double c = (pick(rng, 2) == 0 ? 1.0 : -1.0) * unif(rng, 0.05, 0.3);
        s_hat(j0, h0) = c;
        s_hat(h0, j0) = c;
    }

    Matrix e(m, m);
    for (int j = 0; j < m; ++j) e.col(j) = eig.eigenbasis[j];
    return e * s_hat * e.transpose();
}

} // namespace

std::vector<std::string> closed_germ_algebras() {
    return {"su2", "so3", "sl2r", "su2xsu2", "so4", "su2xR", "abelian:3", "abelian:4"};
}

std::vector<Germ> random_closed_germs(const std::string& id, int count, std::uint64_t seed,
                                      const Tolerances& tols) {
    MetricLieAlgebra mla = make_metric_algebra(id, tols);
    Rng rng(seed);
    std::vector<Germ> out;
    out.reserve(count);
    int stall = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++stall > 50 * count + 200)
            fail(ErrorCode::NumericalCheck, "germ sampling stalled for algebra '" + id + "'");
        int family = static_cast<int>(out.size()) % family_count(id);
        try {
            out.push_back(draw_closed_germ(id, family, mla, rng, tols));
        } catch (const Error&) {
            continue;  // degenerate draw; take a fresh sample
        }
    }
    return out;
}

Germ designed_open_germ(const Tolerances& tols) {
    MetricLieAlgebra mla = make_metric_algebra("su2", tols);
    return make_germ(mla, {unit(3, 0)}, unit(3, 1), tols);
}

std::vector<Germ> catalog_showcase_germs(const Tolerances& tols) {
    std::vector<Germ> out;

    MetricLieAlgebra su2 = make_metric_algebra("su2", tols);
    out.push_back(make_germ(su2, {unit(3, 0), unit(3, 1)}, unit(3, 2), tols));

    // Codimension-two entry: the normal span{b0, b3} is abelian, hence
    // closed, while the tangent plane is not a subalgebra.
    MetricLieAlgebra su2r_pool = make_metric_algebra("su2xR", tols);
    out.push_back(make_germ(su2r_pool, {unit(4, 1), unit(4, 2)},
                            (unit(4, 0) + unit(4, 3)) / std::sqrt(2.0), tols));

    MetricLieAlgebra so3 = make_metric_algebra("so3", tols);
    out.push_back(make_germ(so3, {unit(3, 0), unit(3, 1)}, unit(3, 2), tols));

    MetricLieAlgebra sl2r = make_metric_algebra("sl2r", tols);
    Vector e_plus_f = unit(3, 1) + unit(3, 2), e_minus_f = unit(3, 1) - unit(3, 2);
    out.push_back(make_germ(sl2r, {e_plus_f, e_minus_f}, unit(3, 0), tols));  // spacelike eta
    out.push_back(make_germ(sl2r, {unit(3, 0), e_plus_f}, e_minus_f, tols));  // timelike eta

    MetricLieAlgebra prod = make_metric_algebra("su2xsu2", tols);
    out.push_back(make_subgroup_germ(prod, {unit(6, 3), unit(6, 4), unit(6, 5)}, unit(6, 0), tols));
    std::vector<Vector> antidiag;
    for (int k = 0; k < 3; ++k) antidiag.push_back(embed_pair(unit(3, k), -unit(3, k)) / std::sqrt(2.0));
    out.push_back(make_germ(prod, antidiag, embed_pair(unit(3, 0), unit(3, 0)) / std::sqrt(2.0), tols));

    MetricLieAlgebra so4 = make_metric_algebra("so4", tols);
    out.push_back(make_germ(so4, {unit(6, 0), unit(6, 1), unit(6, 2)}, unit(6, 5), tols));

    MetricLieAlgebra su2r = make_metric_algebra("su2xR", tols);
    out.push_back(make_subgroup_germ(su2r, {unit(4, 0), unit(4, 1), unit(4, 2)}, unit(4, 3), tols));

    MetricLieAlgebra ab4 = make_metric_algebra("abelian:4", tols);
    out.push_back(make_germ(ab4, {unit(4, 0), unit(4, 1)}, unit(4, 3), tols));

    return out;
}

std::vector<DesignedGerm> theorem1_germs(const std::string& id, int count, std::uint64_t seed,
                                         const Tolerances& tols) {
    if (id != "su2xsu2" && id != "so4")
        fail(ErrorCode::InvalidArgument, "designed theorem germs live in su2xsu2 or so4");
    MetricLieAlgebra mla = make_metric_algebra(id, tols);
    Rng rng(seed);
    std::vector<DesignedGerm> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        bool adapted = (i % 2 == 0);
        EigenDecomposition eig;
        Germ g = clustered_line_germ(id, mla, rng, tols, &eig);
        Matrix s = designed_symmetric(eig, !adapted, rng);
        g.gauss_term = s - invariant_shape(g, tols).op.matrix;
        out.push_back({std::move(g), adapted});
    }
    return out;
}

std::vector<Germ> random_two_dim_germs(int count, std::uint64_t seed, const Tolerances& tols) {
    struct Variant {
        const char* id;
        int family;
    };
    // Families whose orthogonal complement is a plane, per the inventory in
    // sample_normal_space.
    const std::vector<Variant> variants = {
        {"su2", 0}, {"so3", 0}, {"sl2r", 0}, {"su2xsu2", 4},
        {"so4", 5}, {"su2xR", 3}, {"abelian:3", 0},
    };
    Rng rng(seed);
    std::vector<Germ> out;
    out.reserve(count);
    std::vector<MetricLieAlgebra> algebras;
    for (const Variant& v : variants) algebras.push_back(make_metric_algebra(v.id, tols));

    int stall = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++stall > 50 * count + 200) fail(ErrorCode::NumericalCheck, "plane-germ sampling stalled");
        int vi = static_cast<int>(out.size()) % static_cast<int>(variants.size());
        try {
            Germ g = draw_closed_germ(variants[vi].id, variants[vi].family, algebras[vi], rng, tols);
            if (g.dim() != 2) fail(ErrorCode::NumericalCheck, "variant did not produce a plane germ");
            // Random self-adjoint Gauss term for the induced form.
            Matrix raw = gauss_matrix(rng, 2, 2);
            const Matrix& form = g.tangent_form.gram();
            g.gauss_term = 0.5 * (raw + form * raw.transpose() * form);
            out.push_back(std::move(g));
        } catch (const Error&) {
            continue;
        }
    }
    return out;
}

std::vector<DesignedGerm> prop4_germs(const std::string& id, int count, std::uint64_t seed,
                                      const Tolerances& tols) {
    if (id != "su2xsu2" && id != "so4")
        fail(ErrorCode::InvalidArgument, "designed kernel-line germs live in su2xsu2 or so4");
    MetricLieAlgebra mla = make_metric_algebra(id, tols);
    Rng rng(seed);
    const int blocks[4][3] = {{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}};

    std::vector<DesignedGerm> out;
    out.reserve(count);
    int stall = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++stall > 50 * count + 200) fail(ErrorCode::NumericalCheck, "kernel-line germ sampling stalled");
        bool adapted = (out.size() % 2 == 0);
        try {
            std::vector<Vector> nb;
            if (id == "su2xsu2") {
                for (int k = 0; k < 3; ++k) nb.push_back(embed_pair(unit(3, k), unit(3, k)) / std::sqrt(2.0));
            } else {
                const int* blk = blocks[pick(rng, 4)];
                nb = {unit(6, blk[0]), unit(6, blk[1]), unit(6, blk[2])};
            }
            Subspace tangent = orthogonal_complement(mla, Subspace(6, nb), tols);
            Vector eta = random_unit_in(mla, nb, rng);
            Germ g = make_germ(mla, mixed_basis(tangent.basis(), rng), eta, tols);

            NormalJacobiResult k = normal_jacobi(g, tols);
            EigenDecomposition eig = eigen_orthonormal(k.op, tols);
            double radius = eig.eigenvalues.cwiseAbs().maxCoeff();
            if (eig.clusters.size() != 2) continue;
            int zero_cluster = -1;
            for (int c = 0; c < 2; ++c)
                if (std::abs(eig.cluster_value(c)) <= tols.cluster_rel * std::max(1.0, radius))
                    zero_cluster = c;
            if (zero_cluster < 0 || eig.clusters[zero_cluster].size() != 1) continue;

            Matrix s = designed_symmetric(eig, !adapted, rng);
            g.gauss_term = s - invariant_shape(g, tols).op.matrix;
            out.push_back({std::move(g), adapted});
        } catch (const Error&) {
            continue;
        }
    }
    return out;
}

std::vector<Germ> umbilic_germs(int count, std::uint64_t seed, const Tolerances& tols) {
    Rng rng(seed);
    MetricLieAlgebra prod = make_metric_algebra("su2xsu2", tols);
    MetricLieAlgebra so4 = make_metric_algebra("so4", tols);
    std::vector<Germ> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        bool use_prod = (i % 2 == 0);
        Germ g = clustered_line_germ(use_prod ? "su2xsu2" : "so4", use_prod ? prod : so4, rng, tols,
                                     nullptr);
        double c = (pick(rng, 2) == 0 ? 1.0 : -1.0) * unif(rng, 0.5, 2.0);
        g.gauss_term = c * Matrix::Identity(g.dim(), g.dim()) - invariant_shape(g, tols).op.matrix;
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<Germ> sphere_umbilic_germs(const Tolerances& tols) {
    std::vector<Germ> out;

    auto ab3 = catalog_model("abelian:3", tols);
    Vector axis3(3), center3(3);
    axis3 << 0.3, -0.2, 0.93;
    center3 << 0.1, -0.2, 0.05;
    Immersion s3 = make_sphere(ab3, 0.7, center3, axis3);
    Vector u_a(2), u_b(2);
    u_a << 0.2, -0.1;
    u_b << -0.15, 0.25;
    out.push_back(germ_from_immersion(s3, u_a, tols));
    out.push_back(germ_from_immersion(s3, u_b, tols));

    auto ab4 = catalog_model("abelian:4", tols);
    Vector axis4(4), center4(4);
    axis4 << 0.1, -0.3, 0.2, 0.92;
    center4 << -0.05, 0.1, 0.0, 0.2;
    Immersion s4 = make_sphere(ab4, 1.3, center4, axis4);
    Vector v_a(3), v_b(3);
    v_a << 0.1, 0.2, -0.05;
    v_b << -0.2, 0.1, 0.15;
    out.push_back(germ_from_immersion(s4, v_a, tols));
    out.push_back(germ_from_immersion(s4, v_b, tols));

    return out;
}

std::vector<ImmersionCase> crossval_immersions(std::uint64_t seed, const Tolerances& tols) {
    Rng rng(seed);
    std::vector<ImmersionCase> out;

    auto sym = [&](int m, double scale) {
        Matrix raw = gauss_matrix(rng, m, m);
        return Matrix(scale * 0.5 * (raw + raw.transpose()));
    };
    auto small = [&](int m, double scale) {
        Vector v = gauss_vector(rng, m);
        return Vector(scale * v);
    };

    auto su2 = catalog_model("su2", tols);
    {
        Vector u0(2);
        u0 << 0.07, -0.04;
        out.push_back({make_exp_chart(su2, {unit(3, 0), unit(3, 1)}), u0, "su2 chart A"});
    }
    {
        Vector u0(2);
        u0 << -0.06, 0.05;
        Vector g1 = unit(3, 0) + 0.2 * unit(3, 2), g2 = unit(3, 1) - 0.1 * unit(3, 2);
        out.push_back({make_exp_chart(su2, {g1, g2}), u0, "su2 chart B"});
    }
    for (int k = 0; k < 2; ++k) {
        Vector u0 = small(2, 0.08);
        out.push_back({make_exp_graph(su2, {unit(3, 0), unit(3, 1)}, unit(3, 2), 0.0, small(2, 0.1),
                                      sym(2, 0.5)),
                       u0, k == 0 ? "su2 graph A" : "su2 graph B"});
    }

    auto su2r = catalog_model("su2xR", tols);
    for (int k = 0; k < 3; ++k) {
        Vector u0 = small(3, 0.07);
        std::vector<Vector> gens{unit(4, 0), unit(4, 1), unit(4, 3)};
        out.push_back({make_exp_graph(su2r, gens, unit(4, 2), 0.0, small(3, 0.1), sym(3, 0.4)), u0,
                       "su2xR graph " + std::string(1, static_cast<char>('A' + k))});
    }

    auto prod = catalog_model("su2xsu2", tols);
    for (int k = 0; k < 3; ++k) {
        // Random orthogonal splitting of R^6 into five generators + normal.
        Matrix q = Eigen::HouseholderQR<Matrix>(gauss_matrix(rng, 6, 6)).householderQ();
        std::vector<Vector> gens;
        for (int j = 0; j < 5; ++j) gens.push_back(q.col(j));
        Vector u0 = small(5, 0.05);
        out.push_back({make_exp_graph(prod, gens, q.col(5), 0.0, small(5, 0.08), sym(5, 0.3)), u0,
                       "su2xsu2 graph " + std::string(1, static_cast<char>('A' + k))});
    }

    return out;
}

} // namespace liecurv
