#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace liecurv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Reason codes for domain errors. Checks that want to branch on the
/// failure mode should catch liecurv::Error and inspect code().
enum class ErrorCode {
    Degenerate,            // bilinear form (or Killing form) singular where a metric is required
    DegenerateSubspace,    // restricted form on a subspace is singular
    LinearlyDependent,     // input vectors do not have full rank
    NotSelfAdjoint,        // operator fails self-adjointness w.r.t. its form
    NotUnit,               // vector is not unit (|<v,v>| != 1)
    NotUnitNormal,         // eta is null, not unit, or not normal to the tangent space
    DegeneratePlane,       // 2-plane is degenerate or not actually 2-dimensional
    DegenerateTangent,     // immersion differential is rank-deficient or tangent space degenerate
    DegenerateNormal,      // normal space degenerate
    JacobiViolated,        // structure constants fail the Jacobi identity
    NotAdInvariant,        // metric fails ad-invariance
    OffAlgebra,            // finite-difference log derivative does not lie in the algebra span
    OrientationFlip,       // normal field cannot be consistently oriented across the stencil
    ExpBound,              // matrix exponential argument exceeds the trust bound
    NumericalCheck,        // an internal consistency check (e.g. exp residual) failed
    HypothesisFailed,      // a theorem hypothesis (closed normal space, K != 0, ...) fails
    NotDiagonalizable,     // operator is not diagonalizable over the reals
    NotUmbilic,            // shape operator is not a multiple of the identity
    InconsistentGaussTerm, // assembled shape operator fails self-adjointness
    DimensionMismatch,
    UnknownId,             // catalog lookup failure
    Schema,                // scenario/report JSON violates the schema
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

/// Every tolerance used anywhere in the toolkit. Values are absolute on
/// unit-scaled data unless noted. Instances are threaded through the API so
/// the CLI can apply scenario/environment overrides without global state.
struct Tolerances {
    double tol = 1e-9;             // generic residual bound
    double tol_sym = 1e-9;         // symmetry of Gram matrices
    double tol_degenerate = 1e-8;  // singularity cutoff, relative to the largest Gram eigenvalue
    double cluster_rel = 1e-6;     // eigenvalue clustering, scaled by max(1, spectral radius)
    double tol_commute = 1e-9;     // commutator bound, scaled by (|a||b| + 1)
    double tol_jacobi = 1e-9;      // Jacobi identity residual
    double tol_closed = 1e-8;      // bracket-closure residual on unit-normalized bases
    double tol_cc = 1e-8;          // constant-curvature sampling residual
    double fd_step = 1e-5;         // central-difference step h
    double tol_fd = 5e-6;          // finite-difference verdict bound on O(1) quantities
    double exact_verdict = 1e-6;   // boolean threshold for algebraically built germs
    double fd_verdict = 1e-4;      // boolean threshold for finite-difference-backed germs
    double eigvec_cond_limit = 1e8;  // eigenvector condition number above which we report non-diagonalizable
    double exp_norm_bound = 50.0;    // trust bound on the matrix exponential argument
    double cc_reject_floor = 0.1;    // |<v,v>| floor when rejection-sampling nondegenerate directions

    /// Set a field by its canonical name; returns false for unknown names.
    bool set(const std::string& name, double value);
};

Tolerances default_tolerances();

} // namespace liecurv
