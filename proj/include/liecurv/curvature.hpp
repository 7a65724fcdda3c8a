#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "liecurv/liealg.hpp"

namespace liecurv {

/// Curvature of the bi-invariant metric attached to a MetricLieAlgebra,
/// evaluated at the identity. Everything here is exact algebra on structure
/// constants: the connection is half the bracket and the curvature tensor a
/// quarter of an iterated bracket, so no differentiation is involved.
class CurvatureContext {
public:
    explicit CurvatureContext(MetricLieAlgebra mla) : mla_(std::move(mla)) {}
    CurvatureContext(LieAlgebra algebra, BilinearForm metric, const Tolerances& tols = default_tolerances())
        : mla_(std::move(algebra), std::move(metric), tols) {}

    const MetricLieAlgebra& metric_algebra() const { return mla_; }
    const LieAlgebra& algebra() const { return mla_.algebra; }
    const BilinearForm& metric() const { return mla_.metric; }
    int dim() const { return mla_.dim(); }

    double inner(const Vector& x, const Vector& y) const { return mla_.metric(x, y); }

    /// Levi-Civita derivative of left-invariant fields: (1/2)[x,y].
    Vector nabla(const Vector& x, const Vector& y) const;
    /// Curvature tensor R(x,y)z = (1/4)[z,[x,y]].
    Vector riem(const Vector& x, const Vector& y, const Vector& z) const;

private:
    MetricLieAlgebra mla_;
};

/// Sectional curvature of span{x,y}: <R(u,v)v,u> / (<u,u><v,v> - <u,v>^2)
/// after orthonormalizing the pair, so the value is basis-independent for
/// any signature. Throws DegeneratePlane when the span is not a
/// nondegenerate 2-plane.
double sectional(const CurvatureContext& ctx, const Vector& x, const Vector& y,
                 const Tolerances& tols = default_tolerances());

/// K_x = R(x, . )x restricted to the orthogonal complement of a unit x,
/// expressed in an orthonormal basis of that complement. offspace_residual
/// is the largest component of any K-image sticking out of the complement
/// (zero in exact arithmetic).
struct JacobiOperatorResult {
    Operator op;
    std::vector<Vector> complement_basis;
    double offspace_residual = 0.0;
};

JacobiOperatorResult jacobi_operator(const CurvatureContext& ctx, const Vector& x,
                                     const Tolerances& tols = default_tolerances());

struct CurvatureWitness {
    Vector x, y;           // plane (or first two of the sampled triple)
    std::optional<Vector> z;
    double value = 0.0;    // deviating sectional value or mixed-term size
    std::string kind;      // "sectional-deviation" | "mixed-term"
};

struct ConstantCurvatureResult {
    bool constant = false;
    double kappa = 0.0;
    int samples = 0;
    double max_deviation = 0.0;
    std::optional<CurvatureWitness> witness;
};

/// Monte-Carlo constancy test. Definite metrics sample random orthonormal
/// triples; indefinite metrics sample (-,+) orthonormal pairs built from the
/// Gram eigenspaces plus a third nondegenerate direction (rejection-sampled),
/// following the split-criterion formulation of the constant-curvature test.
/// Deterministic for a fixed seed.
ConstantCurvatureResult constant_curvature_test(const CurvatureContext& ctx, int samples, std::uint64_t seed,
                                                const Tolerances& tols = default_tolerances());

struct EinsteinResult {
    bool proportional = false;
    double c = 0.0;          // best Ricci = c * Killing fit
    double residual = 0.0;   // ||Ricci - c*Killing||_F
    bool killing_degenerate = false;
};

/// Least-squares fit of Ricci against the Killing form. For bi-invariant
/// metrics the two are proportional whenever the Killing form is nonzero.
EinsteinResult einstein_check(const CurvatureContext& ctx, const Tolerances& tols = default_tolerances());

Matrix ricci_matrix(const CurvatureContext& ctx);

struct AxiomResiduals {
    double pair_symmetry = 0.0;  // <R(w,x)y,z> vs <R(y,z)w,x>
    double skew_symmetry = 0.0;  // antisymmetry in both slots of the 4-tensor
    double first_bianchi = 0.0;  // cyclic sum over the first three arguments
};

/// Max residuals of the curvature-tensor identities over random tuples.
AxiomResiduals curvature_axiom_residuals(const CurvatureContext& ctx, int tuples, std::uint64_t seed);

} // namespace liecurv
