#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "liecurv/curvature.hpp"
#include "liecurv/matrixgroup.hpp"

namespace liecurv {

/// Pointwise submanifold data translated to the identity: an orthonormal
/// tangent basis, an orthonormal basis of the metric complement, a
/// distinguished unit normal eta, and optionally the Gauss term W expressed
/// in the tangent basis. W may come from an explicit matrix, be zero (Lie
/// subgroup germs), or be assembled from an immersion by finite differences;
/// fd_backed records the last case so verdicts switch to the looser
/// finite-difference tolerance.
struct Germ {
    CurvatureContext ctx;
    std::vector<Vector> tangent;
    std::vector<Vector> normal;
    Vector eta;
    BilinearForm tangent_form;  // diag(+-1) in the tangent basis
    std::optional<Matrix> gauss_term;
    bool fd_backed = false;

    int dim() const { return static_cast<int>(tangent.size()); }
    int codim() const { return static_cast<int>(normal.size()); }

    /// Tangent coordinates -> ambient algebra vector.
    Vector lift(const Vector& coords) const;
    /// Metric projection of an ambient vector onto the tangent space,
    /// returned in tangent coordinates.
    Vector project(const Vector& ambient) const;
    /// Verdict tolerance: exact_verdict for algebraic germs, fd_verdict for
    /// finite-difference-backed ones.
    double verdict_tol(const Tolerances& tols) const;
    /// Commutation tolerance with the same split.
    double commute_tol(const Tolerances& tols) const;
};

/// Builds a germ from a tangent basis (any independent spanning set; it is
/// orthonormalized) and a unit normal eta. eta is renormalized to unit
/// length; NotUnitNormal if it is nearly null or not orthogonal to the
/// tangent space. Degenerate tangent spans propagate DegenerateSubspace /
/// LinearlyDependent from the orthonormalization.
Germ make_germ(const MetricLieAlgebra& mla, const std::vector<Vector>& tangent, const Vector& eta,
               const Tolerances& tols = default_tolerances());
Germ make_germ(const MetricLieAlgebra& mla, const std::vector<Vector>& tangent, const Vector& eta,
               Matrix gauss_term, const Tolerances& tols = default_tolerances());

/// Lie-subgroup germ: the tangent space must be a subalgebra (InvalidArgument
/// otherwise), the translated normal field is then constant and W = 0. When
/// eta is empty the first complement vector is selected.
Germ make_subgroup_germ(const MetricLieAlgebra& mla, const std::vector<Vector>& tangent,
                        const Vector& eta = Vector(), const Tolerances& tols = default_tolerances());

/// W assembled from an immersion at u0: entry (h,j) is eps_h times the
/// central-difference derivative of <N, t_h-left-invariant> along the j-th
/// orthonormal tangent direction, per the Gauss-map decomposition. The
/// matrix lives in the orthonormal tangent basis of frame_at(imm, u0).
/// An optional drift selects a different (equally valid) unit normal
/// extension with the same value at u0.
Matrix gauss_term_from_immersion(const Immersion& imm, const Vector& u0, double h,
                                 const NormalDrift* drift = nullptr,
                                 const Tolerances& tols = default_tolerances());

/// Full germ at F(u0): frame_at + gauss_term_from_immersion, fd_backed set.
Germ germ_from_immersion(const Immersion& imm, const Vector& u0,
                         const Tolerances& tols = default_tolerances());

/// Invariant shape operator alpha(v) = projection of (1/2)[v, eta].
/// projection_residual is the largest normal component of (1/2)[t_j, eta];
/// it vanishes exactly when the normal space is bracket-closed, in which
/// case no projection happens at all.
struct InvariantShapeResult {
    Operator op;
    double projection_residual = 0.0;
};

InvariantShapeResult invariant_shape(const Germ& g, const Tolerances& tols = default_tolerances());

/// Normal Jacobi operator K(v) = (1/4)[eta,[eta,v]], restricted to the
/// tangent space by metric projection. tangent_invariance_residual is the
/// largest normal component of K(t_j); the restriction is only the honest K
/// when that residual vanishes.
struct NormalJacobiResult {
    Operator op;
    double tangent_invariance_residual = 0.0;
};

NormalJacobiResult normal_jacobi(const Germ& g, const Tolerances& tols = default_tolerances());

/// A = alpha + W. Any W consistent with a genuine unit normal extension
/// makes A self-adjoint (its skew part must cancel alpha's); a violation
/// beyond 10x the germ's verdict tolerance throws InconsistentGaussTerm.
/// InvalidArgument when the germ carries no Gauss term.
struct ShapeOperatorResult {
    Operator a;
    Operator alpha;
    Operator gauss;
    double self_adjoint_residual = 0.0;
};

ShapeOperatorResult shape_operator(const Germ& g, const Tolerances& tols = default_tolerances());

/// K = alpha^2 probe. The equality is asserted by callers only when
/// closed_normal holds; the residual is always reported so that the
/// non-closed failure mode is measurable.
struct Prop9Result {
    bool closed_normal = false;
    double normal_closure_residual = 0.0;
    double k_minus_alpha_sq = 0.0;          // ||K_restricted - alpha^2||_F
    double tangent_invariance_residual = 0.0;
};

Prop9Result verify_prop9(const Germ& g, const Tolerances& tols = default_tolerances());

/// Everything the curvature-adaptedness definition asks about one germ,
/// alongside the audit quantities the main theorem trades in. Cluster data
/// and the cross-cluster residuals are only present when K (restricted)
/// is diagonalizable.
struct AdaptednessReport {
    bool closed_normal = false;
    bool abelian_normal = false;
    bool K_tangent_invariant = false;
    bool K_diagonalizable = false;
    bool commute_AK = false;
    std::optional<double> thm1_ii_residual;
    std::optional<double> thm1_iii_residual;
    double K_minus_alpha_sq_residual = 0.0;
    std::vector<std::pair<double, int>> multiplicity_profile;  // (eigenvalue, multiplicity) ascending

    double closure_residual = 0.0;
    double abelian_residual = 0.0;
    double tangent_invariance_residual = 0.0;
    double commute_residual = 0.0;
    double alpha_skew_residual = 0.0;

    bool adapted() const { return K_tangent_invariant && commute_AK; }
};

AdaptednessReport check_adapted(const Germ& g, const Tolerances& tols = default_tolerances());

/// The three equivalent statements of the main theorem, evaluated
/// independently on one germ: (i) [A,K] = 0; (ii) the derivatives of the
/// normal coefficients along K-eigenvectors vanish across distinct
/// eigenvalues (only pairs j < h when the induced metric is positive
/// definite); (iii) W preserves the K-eigenspaces. `agree` — the theorem's
/// testable content — says the three booleans coincide. Throws
/// HypothesisFailed when the normal space is not closed and
/// NotDiagonalizable when K is defective on an indefinite restriction.
struct Theorem1Result {
    bool commute_AK = false;
    bool coefficients_vanish = false;
    bool gauss_preserves_eigenspaces = false;
    bool agree = false;
    double commute_residual = 0.0;
    double ii_residual = 0.0;
    double iii_residual = 0.0;
    double min_cluster_gap = 0.0;  // smallest distance between distinct K clusters
    int pair_count = 0;            // (j,h) pairs inspected by (ii)
    bool positive_definite = false;
};

Theorem1Result verify_theorem1(const Germ& g, const Tolerances& tols = default_tolerances());

/// Variant whose statement (ii) is measured on the immersion itself by
/// finite differences of the normal coefficients, instead of through the
/// germ's stored W. The germ must be the one derived from (imm, u0).
Theorem1Result verify_theorem1(const Germ& g, const Immersion& imm, const Vector& u0, double h,
                               const Tolerances& tols = default_tolerances());

/// Spectral shape of K forced by a closed normal space on a Riemannian
/// germ: nonzero eigenvalue clusters are negative with even multiplicity,
/// and alpha is skew. HypothesisFailed unless the restricted metric is
/// positive definite and the normal space is closed.
struct Corollary11Result {
    bool pass = false;
    bool eigenvalues_negative = false;
    bool multiplicities_even = false;
    double alpha_skew_residual = 0.0;
    std::vector<std::pair<double, int>> profile;
};

Corollary11Result check_corollary11(const Germ& g, const Tolerances& tols = default_tolerances());

/// Three-dimensional Riemannian germ with closed normal space and K != 0:
/// [A,K] = 0 if and only if A preserves the kernel line of K. Both sides
/// are evaluated independently; `equivalence` is the verdict.
struct Prop4Result {
    bool equivalence = false;
    bool commute = false;
    bool kernel_invariant = false;
    double commute_residual = 0.0;
    double kernel_residual = 0.0;
    double lambda = 0.0;  // the repeated nonzero eigenvalue
};

Prop4Result check_prop4(const Germ& g, const Tolerances& tols = default_tolerances());

/// Umbilic germs (A = c*I within the germ's verdict tolerance, NotUmbilic
/// otherwise; HypothesisFailed without a closed normal space): the
/// cross-eigenvalue coefficient derivatives all vanish. pair_count = 0
/// means K had a single cluster and the statement holds vacuously.
struct UmbilicResult {
    bool pass = false;
    double c = 0.0;
    double umbilic_residual = 0.0;
    double max_coefficient_residual = 0.0;
    int pair_count = 0;
};

UmbilicResult check_umbilic(const Germ& g, const Tolerances& tols = default_tolerances());

/// Sign-convention guard: each eigenvalue of (restricted) K satisfies
/// lambda_j = -eps_eta * sec(e_j, eta) with the normalized sectional
/// curvature; on Riemannian-tangent germs with spacelike eta this is
/// literally lambda_j = -sec(e_j, eta).
struct SignConventionResult {
    bool pass = false;
    double max_residual = 0.0;
};

SignConventionResult check_sign_convention(const Germ& g, const Tolerances& tols = default_tolerances());

/// Shape operator of an immersed hypersurface-or-higher germ assembled
/// through the second fundamental form: <A v, w> = -<eta, d(tau_w)/dv +
/// (1/2)[v, w]> on the coordinate frame, congruence-transformed into the
/// orthonormal tangent basis of frame_at(imm, u0). Entirely independent of
/// the normal-field derivative route, so the two may be cross-checked.
Matrix shape_via_second_fundamental(const Immersion& imm, const Vector& u0, double h,
                                    const Tolerances& tols = default_tolerances());

/// Cross-validation of the decomposition A = alpha + W: the Gauss-map route
/// at the default step against the second-fundamental route, plus a
/// Richardson consistency probe of the latter (step ratio 2, expected error
/// ratio ~4).
struct Prop6Crossval {
    Matrix a_gauss_route;
    Matrix a_derivative_route;
    double max_entry_diff = 0.0;
    // Step-halving quotient |A(4h)-A(2h)| / |A(2h)-A(h)| of the derivative
    // route; ~4 for a second-order scheme (larger when the h^2 term is
    // accidentally small, so the gate is one-sided).
    double richardson_ratio = 0.0;
    double self_adjoint_residual = 0.0;
};

Prop6Crossval prop6_crossval(const Immersion& imm, const Vector& u0,
                             const Tolerances& tols = default_tolerances());

} // namespace liecurv
