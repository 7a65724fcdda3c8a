#pragma once

#include <optional>
#include <vector>

#include "liecurv/types.hpp"

namespace liecurv {

/// Symmetric bilinear form on R^n, given by its Gram matrix in the standard
/// basis. The form may be indefinite. Construction symmetrizes within
/// tol_sym (and rejects worse asymmetry); degeneracy is detected and kept as
/// a flag so that Killing forms of non-semisimple algebras remain
/// representable. Operations that need an honest metric check is_degenerate().
class BilinearForm {
public:
    BilinearForm(Matrix gram, const Tolerances& tols = default_tolerances());

    int dim() const { return static_cast<int>(gram_.rows()); }
    const Matrix& gram() const { return gram_; }
    bool is_degenerate() const { return degenerate_; }

    double operator()(const Vector& x, const Vector& y) const { return x.dot(gram_ * y); }

private:
    Matrix gram_;
    bool degenerate_ = false;
};

/// Counts of positive and negative eigenvalues of the Gram matrix.
/// Throws Degenerate when an eigenvalue sits below the (relative) cutoff.
struct Signature {
    int positive = 0;
    int negative = 0;
};

Signature signature(const BilinearForm& form, const Tolerances& tols = default_tolerances());

/// Gram-Schmidt with pivoting on the largest remaining |<v,v>|, so that
/// indefinite forms do not die on an unluckily ordered basis. Inputs must be
/// linearly independent (else LinearlyDependent) and span a subspace on
/// which the form is nondegenerate (else DegenerateSubspace). The result
/// satisfies |<u_i,u_j>| = delta_ij; applying it to an already orthonormal
/// family returns that family up to sign.
std::vector<Vector> orthonormalize(const BilinearForm& form, const std::vector<Vector>& vectors,
                                   const Tolerances& tols = default_tolerances());

/// Linear operator on R^n carrying the form it is measured against.
/// self_adjoint_residual is ||G*M - M^T*G||_F.
struct Operator {
    Matrix matrix;
    BilinearForm form;

    double self_adjoint_residual() const {
        return (form.gram() * matrix - matrix.transpose() * form.gram()).norm();
    }
};

/// Spectral data of a form-self-adjoint operator. Eigenvalues are sorted
/// ascending; clusters group eigenvalues whose pairwise gaps fall below
/// cluster_rel * max(1, spectral radius). When the operator is
/// diagonalizable the eigenbasis is orthonormal for the form
/// (|<v_i,v_j>| = delta_ij) and each eigenvector has its largest-magnitude
/// component made positive. Complex spectra, defective operators, and
/// form-degenerate eigenspaces are reported with diagonalizable = false and
/// an empty eigenbasis (eigenvalues then hold real parts).
struct EigenDecomposition {
    Vector eigenvalues;
    std::vector<Vector> eigenbasis;
    std::vector<std::vector<int>> clusters;
    bool diagonalizable = false;
    double eigenvector_condition = 0.0;

    double cluster_value(int c) const;
};

/// Eigendecomposition of an operator self-adjoint with respect to its form.
/// Positive-definite forms reduce through a Cholesky factor to a standard
/// symmetric problem; indefinite forms go through the nonsymmetric solver
/// with post-validation (realness, per-eigenspace form-orthonormalization,
/// eigenvector conditioning). Throws NotSelfAdjoint up front when
/// ||G*M - M^T*G|| exceeds tol on unit scale.
EigenDecomposition eigen_orthonormal(const Operator& op, const Tolerances& tols = default_tolerances());

struct CommuteResult {
    bool commute = false;
    double residual = 0.0; // ||ab - ba||_F
    /// Present when both operators are diagonalizable and commute: a basis
    /// diagonalizing both simultaneously, orthonormal for the shared form.
    std::optional<std::vector<Vector>> shared_basis;
};

/// Commutation test: true iff ||ab - ba|| <= tol_commute * (|a||b| + 1).
/// Callers validating finite-difference data pass a looser tol_commute.
CommuteResult commute(const Operator& a, const Operator& b, double tol_commute,
                      const Tolerances& tols = default_tolerances());
CommuteResult commute(const Operator& a, const Operator& b,
                      const Tolerances& tols = default_tolerances());

/// Clustering of a sorted eigenvalue list (shared by eigen_orthonormal and
/// report assembly): maximal runs with consecutive gaps below
/// cluster_rel * max(1, spectral radius).
std::vector<std::vector<int>> cluster_eigenvalues(const Vector& sorted, const Tolerances& tols);

} // namespace liecurv
