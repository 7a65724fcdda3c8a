#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liecurv/submanifold.hpp"

namespace liecurv {

/// Catalog ids carrying an inventory of bracket-closed normal spaces for
/// randomized germ generation.
std::vector<std::string> closed_germ_algebras();

/// Random germs whose normal space is drawn from the algebra's inventory of
/// bracket-closed subspaces, with a randomized tangent basis (orthonormalized
/// on construction) and a random non-null unit normal. Deterministic in seed.
std::vector<Germ> random_closed_germs(const std::string& id, int count, std::uint64_t seed,
                                      const Tolerances& tols = default_tolerances());

/// A germ whose normal space is deliberately not closed (in su2: tangent
/// span{b0}, eta = b1). The K = alpha^2 defect is exactly 1/4 there.
Germ designed_open_germ(const Tolerances& tols = default_tolerances());

/// Fixed showcase germs, one per interesting catalog configuration.
std::vector<Germ> catalog_showcase_germs(const Tolerances& tols = default_tolerances());

/// Germ together with the adaptedness verdict its Gauss term was built for.
struct DesignedGerm {
    Germ germ;
    bool adapted = false;
};

/// Hypersurface germs in su2xsu2 or so4 whose normal Jacobi operator has at
/// least two distinct nonzero eigenvalue clusters, carrying W = S - alpha
/// with S random symmetric: block-diagonal in the K-eigenbasis (adapted) or
/// with one cross-block entry in [0.05, 0.3] (not adapted). Alternates.
std::vector<DesignedGerm> theorem1_germs(const std::string& id, int count, std::uint64_t seed,
                                         const Tolerances& tols = default_tolerances());

/// Two-dimensional germs with closed normal space across the catalog, each
/// carrying a random self-adjoint Gauss term. alpha^2 is scalar on a plane,
/// so every one of these must come out curvature-adapted.
std::vector<Germ> random_two_dim_germs(int count, std::uint64_t seed,
                                       const Tolerances& tols = default_tolerances());

/// Three-dimensional Riemannian germs with K profile {lambda, lambda, 0}
/// (su2xsu2 diagonal normal space / so4 block normal space) whose Gauss term
/// either respects or breaks the kernel line of K. Alternates.
std::vector<DesignedGerm> prop4_germs(const std::string& id, int count, std::uint64_t seed,
                                      const Tolerances& tols = default_tolerances());

/// Umbilic germs with nontrivial K clustering: W = c*identity - alpha on
/// line-normal su2xsu2 / so4 germs, |c| in [0.5, 2]. The cross-eigenvalue
/// coefficient statement is nonvacuous on these.
std::vector<Germ> umbilic_germs(int count, std::uint64_t seed,
                                const Tolerances& tols = default_tolerances());

/// Sphere germs in abelian ambients, built from genuine finite-difference
/// immersion data; umbilic with A = (1/radius) * identity.
std::vector<Germ> sphere_umbilic_germs(const Tolerances& tols = default_tolerances());

/// Immersed hypersurface cases for the shape-operator cross-validation:
/// exponential charts and graphs in su2, su2xR, su2xsu2 with generic base
/// points. Deterministic in seed.
struct ImmersionCase {
    Immersion immersion;
    Vector u0;
    std::string label;
};

std::vector<ImmersionCase> crossval_immersions(std::uint64_t seed,
                                               const Tolerances& tols = default_tolerances());

} // namespace liecurv
