#include "liecurv/semilinear.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace liecurv {

namespace {

// Largest |eigenvalue| of a symmetric matrix; 0 for empty input.
double spectral_scale(const Matrix& sym) {
    if (sym.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

void fix_sign(Vector& v) {
    int best = 0;
    for (int k = 1; k < v.size(); ++k)
        if (std::abs(v[k]) > std::abs(v[best])) best = k;
    if (v[best] < 0) v = -v;
}

} // namespace

BilinearForm::BilinearForm(Matrix gram, const Tolerances& tols) {
    if (gram.rows() != gram.cols() || gram.rows() == 0)
        fail(ErrorCode::DimensionMismatch, "Gram matrix must be square and nonempty");
    const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
    const double asym = (gram - gram.transpose()).cwiseAbs().maxCoeff();
    if (asym > tols.tol_sym * scale) {
        std::ostringstream msg;
        msg << "Gram matrix asymmetry " << asym << " exceeds tolerance";
        fail(ErrorCode::InvalidArgument, msg.str());
    }
    gram_ = 0.5 * (gram + gram.transpose());

    Eigen::SelfAdjointEigenSolver<Matrix> es(gram_, Eigen::EigenvaluesOnly);
    const Vector ev = es.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    degenerate_ = top == 0.0 || ev.cwiseAbs().minCoeff() < tols.tol_degenerate * top;
}

Signature signature(const BilinearForm& form, const Tolerances& tols) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(form.gram(), Eigen::EigenvaluesOnly);
    const Vector ev = es.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    Signature sig;
    for (int i = 0; i < ev.size(); ++i) {
        if (top == 0.0 || std::abs(ev[i]) < tols.tol_degenerate * top)
            fail(ErrorCode::Degenerate, "form has an eigenvalue below the degeneracy cutoff");
        (ev[i] > 0 ? sig.positive : sig.negative)++;
    }
    return sig;
}

std::vector<Vector> orthonormalize(const BilinearForm& form, const std::vector<Vector>& vectors,
                                   const Tolerances& tols) {
    const int n = form.dim();
    const int m = static_cast<int>(vectors.size());
    if (m == 0) return {};
    Matrix V(n, m);
    for (int j = 0; j < m; ++j) {
        if (vectors[j].size() != n)
            fail(ErrorCode::DimensionMismatch, "vector dimension does not match the form");
        V.col(j) = vectors[j];
    }

    Eigen::JacobiSVD<Matrix> svd(V);
    if (m > n || svd.singularValues()[m - 1] < 1e-12 * std::max(1.0, svd.singularValues()[0]))
        fail(ErrorCode::LinearlyDependent, "input vectors are linearly dependent");

    const Matrix restricted = V.transpose() * form.gram() * V;
    const double scale = std::max(spectral_scale(restricted), 1e-300);
    {
        Eigen::SelfAdjointEigenSolver<Matrix> es(restricted, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().cwiseAbs().minCoeff() < tols.tol_degenerate * scale)
            fail(ErrorCode::DegenerateSubspace, "form is degenerate on the spanned subspace");
    }

    // Pivoted Gram-Schmidt: always take the residual with the largest
    // |self-product| next, so a mixed-signature subspace never hands us a
    // near-null pivot that a fixed order would.
    std::vector<Vector> residual(vectors.begin(), vectors.end());
    std::vector<bool> used(m, false);
    std::vector<Vector> basis;
    for (int step = 0; step < m; ++step) {
        int pivot = -1;
        double best = -1.0;
        for (int j = 0; j < m; ++j) {
            if (used[j]) continue;
            const double self = std::abs(form(residual[j], residual[j]));
            if (self > best) {
                best = self;
                pivot = j;
            }
        }
        if (pivot < 0 || best < tols.tol_degenerate * scale) {
            const bool tiny = pivot >= 0 && residual[pivot].norm() < 1e-8 * std::max(1.0, vectors[pivot].norm());
            fail(tiny ? ErrorCode::LinearlyDependent : ErrorCode::DegenerateSubspace,
                 "no usable pivot while orthonormalizing");
        }
        used[pivot] = true;
        Vector u = residual[pivot];
        const double self = form(u, u);
        u /= std::sqrt(std::abs(self));
        const double sign = self > 0 ? 1.0 : -1.0;
        for (int j = 0; j < m; ++j)
            if (!used[j]) residual[j] -= sign * form(residual[j], u) * u;
        basis.push_back(std::move(u));
    }
    return basis;
}

double EigenDecomposition::cluster_value(int c) const {
    const auto& idx = clusters[c];
    double sum = 0.0;
    for (int i : idx) sum += eigenvalues[i];
    return sum / static_cast<double>(idx.size());
}

std::vector<std::vector<int>> cluster_eigenvalues(const Vector& sorted, const Tolerances& tols) {
    std::vector<std::vector<int>> clusters;
    if (sorted.size() == 0) return clusters;
    const double gap = tols.cluster_rel * std::max(1.0, sorted.cwiseAbs().maxCoeff());
    clusters.push_back({0});
    for (int i = 1; i < sorted.size(); ++i) {
        if (sorted[i] - sorted[i - 1] < gap)
            clusters.back().push_back(i);
        else
            clusters.push_back({i});
    }
    return clusters;
}

namespace {

EigenDecomposition definite_eigen(const Operator& op, const Tolerances& tols) {
    // <x,y> = (Lt x).(Lt y) turns the problem into a standard symmetric one.
    const int n = op.form.dim();
    Eigen::LLT<Matrix> llt(op.form.gram());
    const Matrix L = llt.matrixL();
    const Matrix Lt = L.transpose();
    Matrix S = Lt * op.matrix * Lt.triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
    S = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(S);

    EigenDecomposition out;
    out.eigenvalues = es.eigenvalues();
    out.clusters = cluster_eigenvalues(out.eigenvalues, tols);
    out.diagonalizable = true;
    out.eigenvector_condition = 1.0;
    for (int i = 0; i < n; ++i) {
        Vector v = Lt.triangularView<Eigen::Upper>().solve(es.eigenvectors().col(i));
        v /= std::sqrt(std::abs(op.form(v, v)));
        fix_sign(v);
        out.eigenbasis.push_back(std::move(v));
    }
    return out;
}

EigenDecomposition indefinite_eigen(const Operator& op, const Tolerances& tols) {
    const int n = op.form.dim();
    EigenDecomposition out;
    Eigen::EigenSolver<Matrix> es(op.matrix);

    Vector re(n), im(n);
    for (int i = 0; i < n; ++i) {
        re[i] = es.eigenvalues()[i].real();
        im[i] = es.eigenvalues()[i].imag();
    }
    std::sort(re.begin(), re.end());
    out.eigenvalues = re;
    out.clusters = cluster_eigenvalues(re, tols);

    const double gap = tols.cluster_rel * std::max(1.0, re.cwiseAbs().maxCoeff());
    if (im.cwiseAbs().maxCoeff() > gap) {
        out.diagonalizable = false; // complex spectrum; only real parts reported
        return out;
    }

    // One SVD kernel per cluster: for a defective operator the kernel of
    // (M - lambda*I) comes up short and the residual check below exposes it.
    std::vector<Vector> basis(n);
    for (const auto& cluster : out.clusters) {
        const double lambda = [&] {
            double s = 0.0;
            for (int i : cluster) s += re[i];
            return s / static_cast<double>(cluster.size());
        }();
        const int k = static_cast<int>(cluster.size());
        Eigen::JacobiSVD<Matrix> svd(op.matrix - lambda * Matrix::Identity(n, n), Eigen::ComputeFullV);
        std::vector<Vector> space;
        const double op_scale = std::max(1.0, op.matrix.norm());
        for (int j = 0; j < k; ++j) {
            Vector v = svd.matrixV().col(n - 1 - j);
            if ((op.matrix * v - lambda * v).norm() > 100.0 * gap * op_scale) {
                out.diagonalizable = false; // geometric multiplicity below cluster size
                return out;
            }
            space.push_back(std::move(v));
        }
        std::vector<Vector> ortho;
        try {
            ortho = orthonormalize(op.form, space, tols);
        } catch (const Error&) {
            out.diagonalizable = false; // eigenspace degenerate for the form
            return out;
        }
        for (int j = 0; j < k; ++j) {
            fix_sign(ortho[j]);
            basis[cluster[j]] = std::move(ortho[j]);
        }
    }

    Matrix V(n, n);
    for (int i = 0; i < n; ++i) V.col(i) = basis[i];
    Eigen::JacobiSVD<Matrix> vsvd(V);
    const double smin = vsvd.singularValues()[n - 1];
    out.eigenvector_condition = smin > 0 ? vsvd.singularValues()[0] / smin : std::numeric_limits<double>::infinity();
    if (out.eigenvector_condition > tols.eigvec_cond_limit) {
        out.diagonalizable = false; // near-defective
        return out;
    }
    out.diagonalizable = true;
    out.eigenbasis = std::move(basis);
    return out;
}

} // namespace

EigenDecomposition eigen_orthonormal(const Operator& op, const Tolerances& tols) {
    if (op.matrix.rows() != op.form.dim() || op.matrix.rows() != op.matrix.cols())
        fail(ErrorCode::DimensionMismatch, "operator/form dimension mismatch");
    if (op.form.is_degenerate())
        fail(ErrorCode::Degenerate, "eigendecomposition needs a nondegenerate form");
    const double scale = std::max(1.0, op.form.gram().norm() * op.matrix.norm());
    if (op.self_adjoint_residual() > tols.tol * scale)
        fail(ErrorCode::NotSelfAdjoint, "operator is not self-adjoint for its form");

    Eigen::SelfAdjointEigenSolver<Matrix> ges(op.form.gram(), Eigen::EigenvaluesOnly);
    const bool positive_definite = ges.eigenvalues()[0] > 0.0;
    return positive_definite ? definite_eigen(op, tols) : indefinite_eigen(op, tols);
}

namespace {

// Matrix of b restricted to span(basis), in that (form-orthonormal) basis.
Matrix restrict_to(const Operator& b, const std::vector<Vector>& basis, const std::vector<double>& eps) {
    const int k = static_cast<int>(basis.size());
    Matrix R(k, k);
    for (int j = 0; j < k; ++j) {
        const Vector img = b.matrix * basis[j];
        for (int i = 0; i < k; ++i) R(i, j) = eps[i] * b.form(img, basis[i]);
    }
    return R;
}

} // namespace

CommuteResult commute(const Operator& a, const Operator& b, double tol_commute, const Tolerances& tols) {
    if (a.matrix.rows() != b.matrix.rows())
        fail(ErrorCode::DimensionMismatch, "operators live on different spaces");
    if ((a.form.gram() - b.form.gram()).norm() > tols.tol_sym * (a.form.gram().norm() + 1.0))
        fail(ErrorCode::DimensionMismatch, "operators measured against different forms");
    CommuteResult result;
    result.residual = (a.matrix * b.matrix - b.matrix * a.matrix).norm();
    result.commute = result.residual <= tol_commute * (a.matrix.norm() * b.matrix.norm() + 1.0);
    if (!result.commute) return result;

    // A shared eigenbasis only makes sense for a pair of self-adjoint
    // operators; commuting non-self-adjoint pairs keep shared_basis empty.
    const double scale = a.form.gram().norm() * std::max(1.0, std::max(a.matrix.norm(), b.matrix.norm()));
    if (a.self_adjoint_residual() > tols.tol * std::max(1.0, scale) ||
        b.self_adjoint_residual() > tols.tol * std::max(1.0, scale))
        return result;

    const EigenDecomposition ea = eigen_orthonormal(a, tols);
    if (!ea.diagonalizable) return result;

    // b preserves each eigenspace of a; diagonalize its restrictions.
    std::vector<Vector> shared;
    for (const auto& cluster : ea.clusters) {
        std::vector<Vector> span;
        std::vector<double> eps;
        for (int i : cluster) {
            span.push_back(ea.eigenbasis[i]);
            eps.push_back(a.form(ea.eigenbasis[i], ea.eigenbasis[i]) > 0 ? 1.0 : -1.0);
        }
        const int k = static_cast<int>(span.size());
        Matrix g = Matrix::Zero(k, k);
        for (int i = 0; i < k; ++i) g(i, i) = eps[i];
        Operator restricted{restrict_to(b, span, eps), BilinearForm(g, tols)};
        const EigenDecomposition eb = eigen_orthonormal(restricted, tols);
        if (!eb.diagonalizable) return result;
        for (const Vector& w : eb.eigenbasis) {
            Vector lifted = Vector::Zero(a.form.dim());
            for (int i = 0; i < k; ++i) lifted += w[i] * span[i];
            lifted /= std::sqrt(std::abs(a.form(lifted, lifted)));
            fix_sign(lifted);
            shared.push_back(std::move(lifted));
        }
    }
    result.shared_basis = std::move(shared);
    return result;
}

CommuteResult commute(const Operator& a, const Operator& b, const Tolerances& tols) {
    return commute(a, b, tols.tol_commute, tols);
}

} // namespace liecurv
