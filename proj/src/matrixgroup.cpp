#include "liecurv/matrixgroup.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <sstream>

#include "liecurv/catalog.hpp"

namespace liecurv {

Matrix expm(const Matrix& m) { return m.exp(); }

namespace {

Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

} // namespace

MatrixGroupModel::MatrixGroupModel(std::string id, std::vector<Matrix> basis, MetricLieAlgebra mla,
                                   const Tolerances& tols)
    : id_(std::move(id)), basis_(std::move(basis)), mla_(std::move(mla)) {
    const int n = mla_.dim();
    if (static_cast<int>(basis_.size()) != n)
        fail(ErrorCode::DimensionMismatch, "model needs one basis matrix per algebra dimension");
    d_ = static_cast<int>(basis_[0].rows());
    basis_flat_.resize(d_ * d_, n);
    for (int i = 0; i < n; ++i) {
        if (basis_[i].rows() != d_ || basis_[i].cols() != d_)
            fail(ErrorCode::DimensionMismatch, "model basis matrices must share one square size");
        basis_flat_.col(i) = vec(basis_[i]);
    }
    basis_qr_.compute(basis_flat_);
    if (basis_qr_.rank() < n)
        fail(ErrorCode::LinearlyDependent, "model basis matrices are linearly dependent");

    // The matrices must close under commutators onto the abstract table.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Matrix comm = basis_[i] * basis_[j] - basis_[j] * basis_[i];
            double off = 0.0;
            const Vector coords = coordinates(comm, &off);
            const double table = (coords - mla_.algebra.bracket_basis(i, j)).cwiseAbs().maxCoeff();
            structure_residual_ = std::max({structure_residual_, off, table});
        }
    if (structure_residual_ > 1e-9) {
        std::ostringstream msg;
        msg << "matrix commutators deviate from the structure constants by " << structure_residual_;
        fail(ErrorCode::NumericalCheck, msg.str());
    }
    (void)tols;
}

Matrix MatrixGroupModel::embed(const Vector& x) const {
    if (x.size() != dim()) fail(ErrorCode::DimensionMismatch, "coordinate vector has wrong dimension");
    Matrix m = Matrix::Zero(d_, d_);
    for (int i = 0; i < dim(); ++i) m += x[i] * basis_[i];
    return m;
}

Vector MatrixGroupModel::coordinates(const Matrix& m, double* residual) const {
    const Vector rhs = vec(m);
    const Vector coords = basis_qr_.solve(rhs);
    if (residual) *residual = (basis_flat_ * coords - rhs).norm();
    return coords;
}

namespace {

// Real 2d x 2d image of a complex d x d matrix: X + iY -> [[X, -Y], [Y, X]].
Matrix realify(const Eigen::MatrixXcd& m) {
    const int d = static_cast<int>(m.rows());
    Matrix out(2 * d, 2 * d);
    out.topLeftCorner(d, d) = m.real();
    out.topRightCorner(d, d) = -m.imag();
    out.bottomLeftCorner(d, d) = m.imag();
    out.bottomRightCorner(d, d) = m.real();
    return out;
}

std::vector<Matrix> su2_real_basis() {
    using namespace std::complex_literals;
    Eigen::Matrix2cd s1, s2, s3;
    s1 << 0, 1, 1, 0;
    s2 << 0, -1i, 1i, 0;
    s3 << 1, 0, 0, -1;
    std::vector<Matrix> out;
    for (const auto& s : {s1, s2, s3}) out.push_back(realify(-0.5i * s));
    return out;
}

std::vector<Matrix> so3_basis() {
    Matrix l1 = Matrix::Zero(3, 3), l2 = Matrix::Zero(3, 3), l3 = Matrix::Zero(3, 3);
    l1(1, 2) = -1; l1(2, 1) = 1;
    l2(0, 2) = 1;  l2(2, 0) = -1;
    l3(0, 1) = -1; l3(1, 0) = 1;
    return {l1, l2, l3};
}

std::vector<Matrix> sl2r_basis() {
    Matrix h(2, 2), e(2, 2), f(2, 2);
    h << 1, 0, 0, -1;
    e << 0, 1, 0, 0;
    f << 0, 0, 1, 0;
    return {h, e, f};
}

std::vector<Matrix> so4_basis() {
    std::vector<Matrix> out;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Matrix a = Matrix::Zero(4, 4);
            a(i, j) = 1;
            a(j, i) = -1;
            out.push_back(a);
        }
    return out;
}

std::vector<Matrix> se2_basis() {
    Matrix j = Matrix::Zero(3, 3), p1 = Matrix::Zero(3, 3), p2 = Matrix::Zero(3, 3);
    j(0, 1) = -1; j(1, 0) = 1;
    p1(0, 2) = 1;
    p2(1, 2) = 1;
    return {j, p1, p2};
}

// Block-diagonal stacking of two bases (direct product of the groups).
std::vector<Matrix> block_sum(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    const int da = static_cast<int>(a[0].rows());
    const int db = static_cast<int>(b[0].rows());
    std::vector<Matrix> out;
    for (const Matrix& m : a) {
        Matrix big = Matrix::Zero(da + db, da + db);
        big.topLeftCorner(da, da) = m;
        out.push_back(big);
    }
    for (const Matrix& m : b) {
        Matrix big = Matrix::Zero(da + db, da + db);
        big.bottomRightCorner(db, db) = m;
        out.push_back(big);
    }
    return out;
}

} // namespace

std::shared_ptr<const MatrixGroupModel> catalog_model(const std::string& id, const Tolerances& tols) {
    CatalogEntry entry = catalog_entry(id, tols);
    MetricLieAlgebra mla(entry.algebra, BilinearForm(entry.default_metric, tols), tols);

    std::vector<Matrix> basis;
    if (id.rfind("abelian:", 0) == 0) {
        const int n = mla.dim();
        for (int i = 0; i < n; ++i) {
            Matrix m = Matrix::Zero(n, n);
            m(i, i) = 1;
            basis.push_back(m);
        }
    } else if (id == "su2") {
        basis = su2_real_basis();
    } else if (id == "so3") {
        basis = so3_basis();
    } else if (id == "sl2r") {
        basis = sl2r_basis();
    } else if (id == "su2xsu2") {
        basis = block_sum(su2_real_basis(), su2_real_basis());
    } else if (id == "su2xR") {
        basis = block_sum(su2_real_basis(), {Matrix::Identity(1, 1)});
    } else if (id == "so4") {
        basis = so4_basis();
    } else if (id == "se2") {
        // se2's shipped metric is not ad-invariant, so no MetricLieAlgebra
        // exists for it; reaching this line means the construction above
        // already threw.
        fail(ErrorCode::NotAdInvariant, "se2 has no metric model");
    } else {
        fail(ErrorCode::UnknownId, "no matrix model for '" + id + "'");
    }
    return std::make_shared<MatrixGroupModel>(id, std::move(basis), std::move(mla), tols);
}

Matrix group_exp(const MatrixGroupModel& model, const Vector& x, double t, const Tolerances& tols) {
    const Matrix m = t * model.embed(x);
    if (m.norm() > tols.exp_norm_bound) {
        std::ostringstream msg;
        msg << "||t*x|| = " << m.norm() << " exceeds the exponential trust bound " << tols.exp_norm_bound;
        fail(ErrorCode::ExpBound, msg.str());
    }
    const Matrix e = expm(m);
    const Matrix einv = expm(Matrix(-m));
    const double scale = std::max(1.0, e.norm() * einv.norm());
    const double residual = (e * einv - Matrix::Identity(m.rows(), m.cols())).norm();
    if (residual > 1e-12 * scale)
        fail(ErrorCode::NumericalCheck, "exp(x)exp(-x) residual exceeds 1e-12");
    return e;
}

namespace {

void check_generators(const MatrixGroupModel& model, const std::vector<Vector>& gens) {
    if (gens.empty()) fail(ErrorCode::InvalidArgument, "immersion needs at least one generator");
    Matrix g(model.dim(), gens.size());
    for (size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].size() != model.dim())
            fail(ErrorCode::DimensionMismatch, "generator dimension mismatch");
        g.col(static_cast<Eigen::Index>(j)) = gens[j];
    }
    Eigen::JacobiSVD<Matrix> svd(g);
    const Eigen::Index m = static_cast<Eigen::Index>(gens.size());
    if (m > model.dim() || svd.singularValues()[m - 1] < 1e-10 * std::max(1.0, svd.singularValues()[0]))
        fail(ErrorCode::LinearlyDependent, "immersion generators are linearly dependent");
}

Vector or_zero(const Vector& v, int n) {
    if (v.size() == 0) return Vector::Zero(n);
    if (v.size() != n) fail(ErrorCode::DimensionMismatch, "offset dimension mismatch");
    return v;
}

bool is_abelian_model(const MatrixGroupModel& model) {
    const int n = model.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (model.metric_algebra().algebra.bracket_basis(i, j).norm() != 0.0) return false;
    return true;
}

} // namespace

Immersion make_exp_chart(std::shared_ptr<const MatrixGroupModel> model, std::vector<Vector> generators,
                         Vector offset) {
    check_generators(*model, generators);
    Immersion imm;
    imm.model = std::move(model);
    imm.family = "exp-chart";
    imm.source_dim = static_cast<int>(generators.size());
    imm.offset = or_zero(offset, imm.model->dim());
    imm.generators = std::move(generators);
    return imm;
}

Immersion make_exp_graph(std::shared_ptr<const MatrixGroupModel> model, std::vector<Vector> generators,
                         Vector normal_dir, double f0, Vector f_lin, Matrix f_quad, Vector offset) {
    check_generators(*model, generators);
    const int m = static_cast<int>(generators.size());
    std::vector<Vector> all = generators;
    all.push_back(normal_dir);
    check_generators(*model, all); // normal direction must add a dimension
    if (f_lin.size() != m || f_quad.rows() != m || f_quad.cols() != m)
        fail(ErrorCode::DimensionMismatch, "height polynomial coefficients have wrong shape");
    if ((f_quad - f_quad.transpose()).norm() > 1e-12 * std::max(1.0, f_quad.norm()))
        fail(ErrorCode::InvalidArgument, "quadratic coefficients must be symmetric");

    Immersion imm;
    imm.model = std::move(model);
    imm.family = "exp-graph";
    imm.source_dim = m;
    imm.offset = or_zero(offset, static_cast<int>(generators[0].size()));
    imm.generators = std::move(generators);
    imm.normal_dir = std::move(normal_dir);
    imm.f0 = f0;
    imm.f_lin = std::move(f_lin);
    imm.f_quad = 0.5 * (f_quad + f_quad.transpose());
    return imm;
}

Immersion make_sphere(std::shared_ptr<const MatrixGroupModel> model, double radius, Vector center, Vector axis) {
    if (!is_abelian_model(*model))
        fail(ErrorCode::InvalidArgument, "sphere family needs an abelian ambient");
    if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "sphere radius must be positive");
    const int n = model->dim();
    if (center.size() != n || axis.size() != n || axis.norm() == 0.0)
        fail(ErrorCode::InvalidArgument, "sphere center/axis have wrong shape");

    Immersion imm;
    imm.model = std::move(model);
    imm.family = "sphere";
    imm.source_dim = n - 1;
    imm.radius = radius;
    imm.center = std::move(center);
    imm.axis = axis.normalized();

    // Euclidean completion of the axis: the chart's coordinate directions.
    Matrix cols(n, n);
    cols.col(0) = imm.axis;
    int next = 1;
    for (int i = 0; i < n && next < n; ++i) {
        Vector cand = Vector::Unit(n, i);
        for (int j = 0; j < next; ++j) cand -= cand.dot(cols.col(j)) * cols.col(j);
        if (cand.norm() > 1e-6) cols.col(next++) = cand.normalized();
    }
    if (next < n) fail(ErrorCode::NumericalCheck, "axis completion failed");
    for (int j = 1; j < n; ++j) imm.generators.push_back(cols.col(j));
    return imm;
}

std::vector<std::string> immersion_family_listing() {
    return {
        "exp-chart (params: generators[, offset]; source_dim = #generators)",
        "exp-graph (params: generators, normal, coefficients {const, linear, quadratic}[, offset])",
        "sphere (params: radius, center, axis; abelian ambient only; source_dim = dim - 1)",
    };
}

Matrix evaluate(const Immersion& imm, const Vector& u, const Tolerances& tols) {
    if (u.size() != imm.source_dim) fail(ErrorCode::DimensionMismatch, "source point has wrong dimension");
    const MatrixGroupModel& model = *imm.model;

    if (imm.family == "sphere") {
        const double r = u.norm();
        const double sinc = r < 1e-8 ? 1.0 - r * r / 6.0 : std::sin(r) / r;
        Vector x = imm.center + imm.radius * std::cos(r) * imm.axis;
        for (int j = 0; j < imm.source_dim; ++j) x += imm.radius * sinc * u[j] * imm.generators[j];
        return group_exp(model, x, 1.0, tols);
    }

    Vector lead = Vector::Zero(model.dim());
    for (int j = 0; j < imm.source_dim; ++j) lead += u[j] * imm.generators[j];
    Matrix result = group_exp(model, lead, 1.0, tols);
    if (imm.offset.size() && imm.offset.norm() > 0.0)
        result = group_exp(model, imm.offset, 1.0, tols) * result;

    if (imm.family == "exp-graph") {
        const double f = imm.f0 + imm.f_lin.dot(u) + 0.5 * u.dot(imm.f_quad * u);
        result = result * group_exp(model, imm.normal_dir, f, tols);
    } else if (imm.family != "exp-chart") {
        fail(ErrorCode::UnknownId, "unknown immersion family '" + imm.family + "'");
    }
    return result;
}

LogDerivative left_log_derivative(const Immersion& imm, const Vector& u, int j, double h,
                                  const Tolerances& tols) {
    if (j < 0 || j >= imm.source_dim) fail(ErrorCode::InvalidArgument, "coordinate index out of range");
    Vector up = u, um = u;
    up[j] += h;
    um[j] -= h;
    const Matrix f0 = evaluate(imm, u, tols);
    const Matrix diff = (evaluate(imm, up, tols) - evaluate(imm, um, tols)) / (2.0 * h);
    const Matrix d = Eigen::PartialPivLU<Matrix>(f0).solve(diff);

    LogDerivative out;
    out.coords = imm.model->coordinates(d, &out.off_residual);
    if (out.off_residual > 100.0 * h * h) {
        std::ostringstream msg;
        msg << "difference quotient leaves the algebra span (residual " << out.off_residual << ")";
        fail(ErrorCode::OffAlgebra, msg.str());
    }
    return out;
}

namespace {

void fix_first_significant(Vector& v) {
    const double top = v.cwiseAbs().maxCoeff();
    for (int k = 0; k < v.size(); ++k) {
        if (std::abs(v[k]) > 1e-7 * std::max(1.0, top)) {
            if (v[k] < 0) v = -v;
            return;
        }
    }
}

Matrix tangent_matrix(const Immersion& imm, const Vector& u, double h, const Tolerances& tols) {
    Matrix t(imm.model->dim(), imm.source_dim);
    for (int j = 0; j < imm.source_dim; ++j) t.col(j) = left_log_derivative(imm, u, j, h, tols).coords;
    return t;
}

BilinearForm restricted_diag(const MetricLieAlgebra& mla, const std::vector<Vector>& basis,
                             const Tolerances& tols) {
    Matrix g = Matrix::Zero(basis.size(), basis.size());
    for (size_t i = 0; i < basis.size(); ++i) g(i, i) = mla.metric(basis[i], basis[i]);
    return BilinearForm(g, tols);
}

} // namespace

PointFrame frame_at(const Immersion& imm, const Vector& u0, const Tolerances& tols) {
    const MetricLieAlgebra& mla = imm.model->metric_algebra();
    const Matrix t = tangent_matrix(imm, u0, tols.fd_step, tols);

    Eigen::JacobiSVD<Matrix> svd(t);
    if (svd.singularValues()[imm.source_dim - 1] < 1e-6 * std::max(1.0, svd.singularValues()[0]))
        fail(ErrorCode::DegenerateTangent, "immersion differential is rank-deficient at u0");

    std::vector<Vector> raw;
    for (int j = 0; j < imm.source_dim; ++j) raw.push_back(t.col(j));
    std::vector<Vector> tangent;
    try {
        tangent = orthonormalize(mla.metric, raw, tols);
    } catch (const Error& e) {
        fail(ErrorCode::DegenerateTangent, std::string("tangent space is metric-degenerate: ") + e.what());
    }

    std::vector<Vector> normal;
    try {
        const Subspace comp = orthogonal_complement(mla, Subspace(mla.dim(), raw), tols);
        normal = orthonormalize(mla.metric, comp.basis(), tols);
    } catch (const Error& e) {
        fail(ErrorCode::DegenerateNormal, std::string("normal space is metric-degenerate: ") + e.what());
    }

    Vector eta = normal[0];
    fix_first_significant(eta);

    return PointFrame{evaluate(imm, u0, tols), t,          tangent,
                      normal,                  eta,        restricted_diag(mla, tangent, tols),
                      restricted_diag(mla, normal, tols)};
}

Vector normal_field(const Immersion& imm, const Vector& u0, const Vector& eta, const Vector& u, double h,
                    const NormalDrift* drift, const Tolerances& tols) {
    const MetricLieAlgebra& mla = imm.model->metric_algebra();
    const Matrix t = tangent_matrix(imm, u, h, tols);
    std::vector<Vector> raw;
    for (int j = 0; j < imm.source_dim; ++j) raw.push_back(t.col(j));
    std::vector<Vector> normal;
    try {
        const Subspace comp = orthogonal_complement(mla, Subspace(mla.dim(), raw), tols);
        normal = orthonormalize(mla.metric, comp.basis(), tols);
    } catch (const Error& e) {
        fail(ErrorCode::DegenerateNormal, std::string("normal space degenerates near u0: ") + e.what());
    }

    Vector target = eta;
    if (drift)
        for (size_t j = 0; j < drift->vectors.size() && j < static_cast<size_t>(u.size()); ++j)
            target += (u[static_cast<Eigen::Index>(j)] - u0[static_cast<Eigen::Index>(j)]) * drift->vectors[j];

    Vector projected = Vector::Zero(mla.dim());
    for (const Vector& nu : normal) projected += (mla.metric(target, nu) / mla.metric(nu, nu)) * nu;

    const double self = mla.metric(projected, projected);
    if (std::abs(self) < 0.5 * std::abs(mla.metric(target, target)))
        fail(ErrorCode::OrientationFlip, "normal projection loses more than half its weight");
    Vector n = projected / std::sqrt(std::abs(self));

    const double align = n.dot(eta) / (n.norm() * eta.norm());
    if (std::abs(align) < std::sqrt(0.5))
        fail(ErrorCode::OrientationFlip, "normal spaces tilt by more than 45 degrees across the stencil");
    if (align < 0) n = -n;
    return n;
}

double normal_coefficient_derivative(const Immersion& imm, const Vector& u0, const Vector& eta,
                                     const Vector& v, const Vector& b, double h, const NormalDrift* drift,
                                     const Tolerances& tols) {
    const MetricLieAlgebra& mla = imm.model->metric_algebra();
    const Matrix t = tangent_matrix(imm, u0, h, tols);
    const Vector w = t.colPivHouseholderQr().solve(v);
    if ((t * w - v).norm() > 1e-6 * (v.norm() + 1.0))
        fail(ErrorCode::InvalidArgument, "direction is not tangent to the immersion at u0");

    const Vector np = normal_field(imm, u0, eta, u0 + h * w, h, drift, tols);
    const Vector nm = normal_field(imm, u0, eta, u0 - h * w, h, drift, tols);
    return (mla.metric(np, b) - mla.metric(nm, b)) / (2.0 * h);
}

} // namespace liecurv
