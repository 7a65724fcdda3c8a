#pragma once

#include <vector>

#include "liecurv/semilinear.hpp"
#include "liecurv/types.hpp"

namespace liecurv {

/// Finite-dimensional real Lie algebra given by structure constants
/// c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k. Antisymmetry in (i,j)
/// is enforced structurally: the constructor stores the i<j triangle and
/// mirrors it, so c[j][i][k] == -c[i][j][k] holds exactly. The Jacobi
/// identity is NOT validated here (check_jacobi / MetricLieAlgebra do that),
/// which keeps corrupted tables representable for negative tests.
/// Dimensions are capped at 32.
class LieAlgebra {
public:
    LieAlgebra(int dim, const std::vector<std::vector<std::vector<double>>>& structure);

    static constexpr int max_dim = 32;

    int dim() const { return n_; }
    double structure(int i, int j, int k) const { return c_[(i * n_ + j) * n_ + k]; }

    /// [e_i, e_j] as a coordinate vector.
    Vector bracket_basis(int i, int j) const;
    Vector bracket(const Vector& x, const Vector& y) const;
    /// Matrix of ad(x) = [x, .].
    Matrix ad(const Vector& x) const;

private:
    int n_;
    std::vector<double> c_;
};

/// Max over basis triples of ||[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]||.
double jacobi_residual(const LieAlgebra& alg);
bool check_jacobi(const LieAlgebra& alg, const Tolerances& tols = default_tolerances());

/// Killing form B(x,y) = tr(ad x . ad y); degenerate for non-semisimple
/// algebras, which the returned form's flag records.
BilinearForm killing_form(const LieAlgebra& alg, const Tolerances& tols = default_tolerances());

/// Max over basis triples of |<[e_i,e_j],e_k> - <e_i,[e_j,e_k]>|.
double ad_invariance_residual(const LieAlgebra& alg, const BilinearForm& form);
bool is_ad_invariant(const LieAlgebra& alg, const BilinearForm& form,
                     const Tolerances& tols = default_tolerances());

/// Lie algebra with a nondegenerate ad-invariant metric. Construction
/// validates the Jacobi identity, nondegeneracy, and ad-invariance.
struct MetricLieAlgebra {
    MetricLieAlgebra(LieAlgebra algebra, BilinearForm metric,
                     const Tolerances& tols = default_tolerances());

    LieAlgebra algebra;
    BilinearForm metric;

    int dim() const { return algebra.dim(); }
};

/// Span of a list of coordinate vectors; construction enforces linear
/// independence (Euclidean), not nondegeneracy of any form.
class Subspace {
public:
    Subspace(int ambient_dim, std::vector<Vector> basis);

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vector>& basis() const { return basis_; }
    Matrix basis_matrix() const;

private:
    int ambient_;
    std::vector<Vector> basis_;
};

/// Max over basis pairs of the (Euclidean) distance from [s_i, s_j] to the
/// span. Basis vectors are unit-normalized before brackets are taken so the
/// tolerance means the same thing at every scale.
double closure_residual(const LieAlgebra& alg, const Subspace& s);
bool is_subalgebra(const LieAlgebra& alg, const Subspace& s,
                   const Tolerances& tols = default_tolerances());

double abelian_residual(const LieAlgebra& alg, const Subspace& s);
bool is_abelian_subspace(const LieAlgebra& alg, const Subspace& s,
                         const Tolerances& tols = default_tolerances());

/// Orthogonal complement of s with respect to the metric. Throws
/// DegenerateSubspace when the metric restricted to s is singular (exactly
/// the case where s + s-perp fails to be a direct sum).
Subspace orthogonal_complement(const MetricLieAlgebra& mla, const Subspace& s,
                               const Tolerances& tols = default_tolerances());

} // namespace liecurv
