#include "liecurv/curvature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace liecurv {

Vector CurvatureContext::nabla(const Vector& x, const Vector& y) const {
    return 0.5 * algebra().bracket(x, y);
}

Vector CurvatureContext::riem(const Vector& x, const Vector& y, const Vector& z) const {
    return 0.25 * algebra().bracket(z, algebra().bracket(x, y));
}

double sectional(const CurvatureContext& ctx, const Vector& x, const Vector& y, const Tolerances& tols) {
    std::vector<Vector> pair;
    try {
        pair = orthonormalize(ctx.metric(), {x, y}, tols);
    } catch (const Error& e) {
        fail(ErrorCode::DegeneratePlane, std::string("span{x,y} is not a nondegenerate 2-plane: ") + e.what());
    }
    const Vector& u = pair[0];
    const Vector& v = pair[1];
    const double q = ctx.inner(u, u) * ctx.inner(v, v); // +-1 for an orthonormal pair
    return ctx.inner(ctx.riem(u, v, v), u) / q;
}

JacobiOperatorResult jacobi_operator(const CurvatureContext& ctx, const Vector& x, const Tolerances& tols) {
    const double self = ctx.inner(x, x);
    if (std::abs(std::abs(self) - 1.0) > 1e-6)
        fail(ErrorCode::NotUnit, "jacobi_operator needs |<x,x>| = 1");

    const Subspace line(ctx.dim(), {x});
    const Subspace comp = orthogonal_complement(ctx.metric_algebra(), line, tols);
    const std::vector<Vector> basis = orthonormalize(ctx.metric(), comp.basis(), tols);

    const int m = static_cast<int>(basis.size());
    Matrix k(m, m);
    Matrix g = Matrix::Zero(m, m);
    double offspace = 0.0;
    for (int j = 0; j < m; ++j) {
        const Vector img = ctx.riem(x, basis[j], x);
        Vector inside = Vector::Zero(ctx.dim());
        for (int i = 0; i < m; ++i) {
            const double eps = ctx.inner(basis[i], basis[i]);
            k(i, j) = ctx.inner(img, basis[i]) / eps;
            inside += k(i, j) * basis[i];
        }
        offspace = std::max(offspace, (img - inside).norm());
        g(j, j) = ctx.inner(basis[j], basis[j]);
    }
    return {Operator{k, BilinearForm(g, tols)}, basis, offspace};
}

namespace {

Vector randn(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> dist;
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    return v;
}

struct PlaneSample {
    Vector x, y;
    std::optional<Vector> z;
};

} // namespace

ConstantCurvatureResult constant_curvature_test(const CurvatureContext& ctx, int samples, std::uint64_t seed,
                                                const Tolerances& tols) {
    const int n = ctx.dim();
    ConstantCurvatureResult out;
    out.constant = true;
    if (n < 2) {
        out.kappa = 0.0;
        return out;
    }

    std::mt19937_64 rng(seed);
    Eigen::SelfAdjointEigenSolver<Matrix> ges(ctx.metric().gram());
    const bool definite = ges.eigenvalues()[0] > 0.0 || ges.eigenvalues()[n - 1] < 0.0;

    // Eigenspace frames for the indefinite sampler: columns spanning the
    // negative- and positive-definite parts (orthogonal for the form too).
    Matrix wneg(n, 0), wpos(n, 0);
    if (!definite) {
        int nneg = 0;
        for (int i = 0; i < n; ++i)
            if (ges.eigenvalues()[i] < 0) ++nneg;
        wneg = ges.eigenvectors().leftCols(nneg);
        wpos = ges.eigenvectors().rightCols(n - nneg);
    }

    auto draw = [&]() -> std::optional<PlaneSample> {
        if (definite) {
            const int k = std::min(n, 3);
            std::vector<Vector> raw;
            for (int i = 0; i < k; ++i) raw.push_back(randn(rng, n));
            std::vector<Vector> ortho;
            try {
                ortho = orthonormalize(ctx.metric(), raw, tols);
            } catch (const Error&) {
                return std::nullopt; // dependent draw; retry
            }
            PlaneSample s{ortho[0], ortho[1], std::nullopt};
            if (k == 3) s.z = ortho[2];
            return s;
        }
        Vector x = wneg * randn(rng, static_cast<int>(wneg.cols()));
        Vector y = wpos * randn(rng, static_cast<int>(wpos.cols()));
        const double xx = ctx.inner(x, x), yy = ctx.inner(y, y);
        if (!(xx < 0.0) || !(yy > 0.0)) return std::nullopt;
        x /= std::sqrt(-xx);
        y /= std::sqrt(yy);
        PlaneSample s{x, y, std::nullopt};
        if (n >= 3) {
            for (int attempt = 0; attempt < 1000; ++attempt) {
                Vector z = randn(rng, n);
                z -= (ctx.inner(z, x) / ctx.inner(x, x)) * x;
                z -= (ctx.inner(z, y) / ctx.inner(y, y)) * y;
                const double zz = ctx.inner(z, z);
                if (std::abs(zz) > tols.cc_reject_floor * std::max(1.0, z.squaredNorm())) {
                    s.z = z / std::sqrt(std::abs(zz));
                    break;
                }
            }
            if (!s.z) return std::nullopt;
        }
        return s;
    };

    std::vector<PlaneSample> pool;
    std::vector<double> secs;
    std::vector<int> sec_owner; // sample index per sectional value
    double worst_mixed = 0.0;
    int worst_mixed_at = -1;
    for (int i = 0; i < samples; ++i) {
        std::optional<PlaneSample> s;
        for (int attempt = 0; attempt < 1000 && !s; ++attempt) s = draw();
        if (!s) fail(ErrorCode::DegenerateSubspace, "could not sample nondegenerate directions");
        const int idx = static_cast<int>(pool.size());
        pool.push_back(*s);

        auto sec_of = [&](const Vector& a, const Vector& b) {
            const double q = ctx.inner(a, a) * ctx.inner(b, b);
            return ctx.inner(ctx.riem(a, b, b), a) / q;
        };
        secs.push_back(sec_of(s->x, s->y));
        sec_owner.push_back(idx);
        if (s->z) {
            secs.push_back(sec_of(s->x, *s->z));
            sec_owner.push_back(idx);
            secs.push_back(sec_of(s->y, *s->z));
            sec_owner.push_back(idx);
            const double mixed = std::abs(ctx.inner(ctx.riem(s->x, s->y, *s->z), s->x));
            if (mixed > worst_mixed) {
                worst_mixed = mixed;
                worst_mixed_at = idx;
            }
        }
        ++out.samples;
    }

    double mean = 0.0;
    for (double v : secs) mean += v;
    mean /= static_cast<double>(secs.size());
    out.kappa = mean;

    double worst_dev = 0.0;
    int worst_dev_at = -1;
    for (size_t i = 0; i < secs.size(); ++i) {
        const double d = std::abs(secs[i] - mean);
        if (d > worst_dev) {
            worst_dev = d;
            worst_dev_at = sec_owner[i];
        }
    }
    out.max_deviation = std::max(worst_dev, worst_mixed);

    if (worst_dev > tols.tol_cc || worst_mixed > tols.tol_cc) {
        out.constant = false;
        const bool dev_wins = worst_dev >= worst_mixed;
        const PlaneSample& s = pool[dev_wins ? worst_dev_at : worst_mixed_at];
        CurvatureWitness w;
        w.x = s.x;
        w.y = s.y;
        w.z = s.z;
        w.value = dev_wins ? worst_dev : worst_mixed;
        w.kind = dev_wins ? "sectional-deviation" : "mixed-term";
        out.witness = w;
    }
    return out;
}

Matrix ricci_matrix(const CurvatureContext& ctx) {
    const int n = ctx.dim();
    Matrix ric(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double trace = 0.0;
            for (int k = 0; k < n; ++k)
                trace += ctx.riem(Vector::Unit(n, k), Vector::Unit(n, i), Vector::Unit(n, j))[k];
            ric(i, j) = trace;
        }
    return ric;
}

EinsteinResult einstein_check(const CurvatureContext& ctx, const Tolerances& tols) {
    EinsteinResult out;
    const Matrix ric = ricci_matrix(ctx);
    const BilinearForm killing = killing_form(ctx.algebra(), tols);
    out.killing_degenerate = killing.is_degenerate();
    const double bnorm2 = killing.gram().squaredNorm();
    if (bnorm2 > 0.0) out.c = (ric.cwiseProduct(killing.gram())).sum() / bnorm2;
    out.residual = (ric - out.c * killing.gram()).norm();
    out.proportional = out.residual <= tols.tol * std::max(1.0, ric.norm());
    return out;
}

AxiomResiduals curvature_axiom_residuals(const CurvatureContext& ctx, int tuples, std::uint64_t seed) {
    const int n = ctx.dim();
    std::mt19937_64 rng(seed);
    AxiomResiduals r;
    for (int t = 0; t < tuples; ++t) {
        const Vector w = randn(rng, n), x = randn(rng, n), y = randn(rng, n), z = randn(rng, n);
        const Vector rwx_y = ctx.riem(w, x, y);
        r.pair_symmetry = std::max(r.pair_symmetry,
                                   std::abs(ctx.inner(rwx_y, z) - ctx.inner(ctx.riem(y, z, w), x)));
        r.skew_symmetry = std::max(r.skew_symmetry,
                                   std::abs(ctx.inner(rwx_y, z) + ctx.inner(ctx.riem(w, x, z), y)));
        r.skew_symmetry = std::max(r.skew_symmetry, (rwx_y + ctx.riem(x, w, y)).norm());
        r.first_bianchi = std::max(r.first_bianchi,
                                   (rwx_y + ctx.riem(x, y, w) + ctx.riem(y, w, x)).norm());
    }
    return r;
}

} // namespace liecurv
