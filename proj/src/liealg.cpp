#include "liecurv/liealg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace liecurv {

LieAlgebra::LieAlgebra(int dim, const std::vector<std::vector<std::vector<double>>>& structure)
    : n_(dim) {
    if (dim < 1 || dim > max_dim)
        fail(ErrorCode::InvalidArgument, "algebra dimension must be in [1, 32]");
    if (static_cast<int>(structure.size()) != dim)
        fail(ErrorCode::DimensionMismatch, "structure constant table has wrong shape");
    c_.assign(static_cast<size_t>(dim) * dim * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(structure[i].size()) != dim)
            fail(ErrorCode::DimensionMismatch, "structure constant table has wrong shape");
        for (int j = i + 1; j < dim; ++j) {
            if (static_cast<int>(structure[i][j].size()) != dim)
                fail(ErrorCode::DimensionMismatch, "structure constant table has wrong shape");
            for (int k = 0; k < dim; ++k) {
                const double v = structure[i][j][k];
                c_[(i * n_ + j) * n_ + k] = v;
                c_[(j * n_ + i) * n_ + k] = -v;
            }
        }
    }
}

Vector LieAlgebra::bracket_basis(int i, int j) const {
    Vector out(n_);
    for (int k = 0; k < n_; ++k) out[k] = structure(i, j, k);
    return out;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
    if (x.size() != n_ || y.size() != n_)
        fail(ErrorCode::DimensionMismatch, "bracket arguments have wrong dimension");
    Vector out = Vector::Zero(n_);
    for (int i = 0; i < n_; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < n_; ++j) {
            if (y[j] == 0.0) continue;
            const double w = x[i] * y[j];
            for (int k = 0; k < n_; ++k) out[k] += w * structure(i, j, k);
        }
    }
    return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
    Matrix m(n_, n_);
    for (int j = 0; j < n_; ++j) {
        Vector col = Vector::Zero(n_);
        for (int i = 0; i < n_; ++i) {
            if (x[i] == 0.0) continue;
            for (int k = 0; k < n_; ++k) col[k] += x[i] * structure(i, j, k);
        }
        m.col(j) = col;
    }
    return m;
}

double jacobi_residual(const LieAlgebra& alg) {
    const int n = alg.dim();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const Vector r = alg.bracket(Vector::Unit(n, i), alg.bracket_basis(j, k)) +
                                 alg.bracket(Vector::Unit(n, j), alg.bracket_basis(k, i)) +
                                 alg.bracket(Vector::Unit(n, k), alg.bracket_basis(i, j));
                worst = std::max(worst, r.norm());
            }
    return worst;
}

bool check_jacobi(const LieAlgebra& alg, const Tolerances& tols) {
    return jacobi_residual(alg) <= tols.tol_jacobi;
}

BilinearForm killing_form(const LieAlgebra& alg, const Tolerances& tols) {
    const int n = alg.dim();
    std::vector<Matrix> ads;
    ads.reserve(n);
    for (int i = 0; i < n; ++i) ads.push_back(alg.ad(Vector::Unit(n, i)));
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) b(i, j) = b(j, i) = (ads[i] * ads[j]).trace();
    return BilinearForm(b, tols);
}

double ad_invariance_residual(const LieAlgebra& alg, const BilinearForm& form) {
    const int n = alg.dim();
    if (form.dim() != n) fail(ErrorCode::DimensionMismatch, "form dimension mismatch");
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Vector bij = alg.bracket_basis(i, j);
            for (int k = 0; k < n; ++k) {
                const double lhs = bij.dot(form.gram().col(k));
                const double rhs = form.gram().row(i).dot(alg.bracket_basis(j, k));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
    return worst;
}

bool is_ad_invariant(const LieAlgebra& alg, const BilinearForm& form, const Tolerances& tols) {
    return ad_invariance_residual(alg, form) <= tols.tol;
}

MetricLieAlgebra::MetricLieAlgebra(LieAlgebra algebra_in, BilinearForm metric_in, const Tolerances& tols)
    : algebra(std::move(algebra_in)), metric(std::move(metric_in)) {
    if (metric.dim() != algebra.dim())
        fail(ErrorCode::DimensionMismatch, "metric dimension does not match the algebra");
    if (metric.is_degenerate())
        fail(ErrorCode::Degenerate, "metric is degenerate");
    const double jr = jacobi_residual(algebra);
    if (jr > tols.tol_jacobi) {
        std::ostringstream msg;
        msg << "structure constants violate the Jacobi identity (residual " << jr << ")";
        fail(ErrorCode::JacobiViolated, msg.str());
    }
    const double ar = ad_invariance_residual(algebra, metric);
    if (ar > tols.tol) {
        std::ostringstream msg;
        msg << "metric is not ad-invariant (residual " << ar << ")";
        fail(ErrorCode::NotAdInvariant, msg.str());
    }
}

Subspace::Subspace(int ambient_dim, std::vector<Vector> basis) : ambient_(ambient_dim), basis_(std::move(basis)) {
    if (basis_.empty()) fail(ErrorCode::InvalidArgument, "subspace needs at least one basis vector");
    for (const Vector& v : basis_)
        if (v.size() != ambient_) fail(ErrorCode::DimensionMismatch, "basis vector has wrong dimension");
    Eigen::JacobiSVD<Matrix> svd(basis_matrix());
    const int m = static_cast<int>(basis_.size());
    if (m > ambient_ || svd.singularValues()[m - 1] < 1e-12 * std::max(1.0, svd.singularValues()[0]))
        fail(ErrorCode::LinearlyDependent, "subspace basis is linearly dependent");
}

Matrix Subspace::basis_matrix() const {
    Matrix m(ambient_, dim());
    for (int j = 0; j < dim(); ++j) m.col(j) = basis_[j];
    return m;
}

namespace {

double span_residual(const LieAlgebra& alg, const Subspace& s, bool against_span) {
    // Distance of each pairwise bracket from the span (or from zero).
    Matrix b = s.basis_matrix();
    for (int j = 0; j < b.cols(); ++j) b.col(j).normalize();
    const Eigen::HouseholderQR<Matrix> qr(b);
    const Matrix q = qr.householderQ() * Matrix::Identity(s.ambient_dim(), s.dim());
    double worst = 0.0;
    for (int i = 0; i < s.dim(); ++i)
        for (int j = i + 1; j < s.dim(); ++j) {
            const Vector w = alg.bracket(b.col(i), b.col(j));
            worst = std::max(worst, against_span ? (w - q * (q.transpose() * w)).norm() : w.norm());
        }
    return worst;
}

} // namespace

double closure_residual(const LieAlgebra& alg, const Subspace& s) {
    return span_residual(alg, s, true);
}

bool is_subalgebra(const LieAlgebra& alg, const Subspace& s, const Tolerances& tols) {
    return closure_residual(alg, s) <= tols.tol_closed;
}

double abelian_residual(const LieAlgebra& alg, const Subspace& s) {
    return span_residual(alg, s, false);
}

bool is_abelian_subspace(const LieAlgebra& alg, const Subspace& s, const Tolerances& tols) {
    return abelian_residual(alg, s) <= tols.tol_closed;
}

Subspace orthogonal_complement(const MetricLieAlgebra& mla, const Subspace& s, const Tolerances& tols) {
    const int n = mla.dim();
    if (s.ambient_dim() != n) fail(ErrorCode::DimensionMismatch, "subspace lives in a different space");
    if (s.dim() == n) fail(ErrorCode::InvalidArgument, "complement of the full space is empty");

    const Matrix v = s.basis_matrix();
    const Matrix restricted = v.transpose() * mla.metric.gram() * v;
    Eigen::SelfAdjointEigenSolver<Matrix> es(restricted, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    if (top == 0.0 || es.eigenvalues().cwiseAbs().minCoeff() < tols.tol_degenerate * top)
        fail(ErrorCode::DegenerateSubspace, "metric is degenerate on the subspace; no complement");

    // Kernel of V^T G: the right singular vectors past rank dim(s).
    Eigen::JacobiSVD<Matrix> svd(v.transpose() * mla.metric.gram(), Eigen::ComputeFullV);
    std::vector<Vector> basis;
    for (int j = s.dim(); j < n; ++j) basis.push_back(svd.matrixV().col(j));
    return Subspace(n, std::move(basis));
}

} // namespace liecurv
