#pragma once

#include <memory>
#include <string>
#include <vector>

#include "liecurv/liealg.hpp"

namespace liecurv {

/// Matrix exponential (scaling-and-squaring with Pade approximant).
Matrix expm(const Matrix& m);

/// Concrete matrix realization of a catalog algebra: d x d basis matrices
/// whose commutators reproduce the abstract structure constants (complex
/// groups are realized as real matrices of doubled size). Construction
/// derives the structure constants from the matrices and records the
/// entrywise deviation from the abstract table.
class MatrixGroupModel {
public:
    MatrixGroupModel(std::string id, std::vector<Matrix> basis, MetricLieAlgebra mla,
                     const Tolerances& tols = default_tolerances());

    const std::string& id() const { return id_; }
    int matrix_size() const { return d_; }
    int dim() const { return mla_.dim(); }
    const std::vector<Matrix>& basis() const { return basis_; }
    const MetricLieAlgebra& metric_algebra() const { return mla_; }
    double structure_residual() const { return structure_residual_; }

    /// Algebra coordinates -> matrix.
    Matrix embed(const Vector& x) const;
    /// Least-squares coordinates of a matrix over the basis; residual is the
    /// distance from the basis span.
    Vector coordinates(const Matrix& m, double* residual = nullptr) const;

private:
    std::string id_;
    int d_;
    std::vector<Matrix> basis_;
    MetricLieAlgebra mla_;
    Matrix basis_flat_;  // d^2 x n, columns vec(B_i)
    Eigen::ColPivHouseholderQR<Matrix> basis_qr_;
    double structure_residual_ = 0.0;
};

/// Matrix model for a catalog algebra id (same default metric as the
/// abstract catalog). Throws UnknownId for se2-style ids only if absent;
/// every catalog id has a model.
std::shared_ptr<const MatrixGroupModel> catalog_model(const std::string& id,
                                                      const Tolerances& tols = default_tolerances());

/// exp(t * x) with the argument bound ||t*x||_F <= exp_norm_bound enforced
/// (ExpBound) and the inverse residual exp(m)exp(-m) = I validated
/// (NumericalCheck).
Matrix group_exp(const MatrixGroupModel& model, const Vector& x, double t,
                 const Tolerances& tols = default_tolerances());

/// Parametrized immersion germ into a matrix group. Families form a closed
/// catalog:
///   exp-chart  F(u) = exp(offset) * exp(sum_j u_j X_j)
///   exp-graph  F(u) = exp(offset) * exp(sum_j u_j X_j) * exp(f(u) * N),
///              f(u) = c0 + <lin, u> + u^T quad u / 2
///   sphere     round hypersphere of the given radius/center in an abelian
///              ambient, exponential chart around `axis`
struct Immersion {
    std::shared_ptr<const MatrixGroupModel> model;
    std::string family;
    int source_dim = 0;
    std::vector<Vector> generators;
    Vector offset;
    Vector normal_dir;
    double f0 = 0.0;
    Vector f_lin;
    Matrix f_quad;
    double radius = 0.0;
    Vector center;
    Vector axis;
};

Immersion make_exp_chart(std::shared_ptr<const MatrixGroupModel> model, std::vector<Vector> generators,
                         Vector offset = Vector());
Immersion make_exp_graph(std::shared_ptr<const MatrixGroupModel> model, std::vector<Vector> generators,
                         Vector normal_dir, double f0, Vector f_lin, Matrix f_quad, Vector offset = Vector());
Immersion make_sphere(std::shared_ptr<const MatrixGroupModel> model, double radius, Vector center, Vector axis);

std::vector<std::string> immersion_family_listing();

Matrix evaluate(const Immersion& imm, const Vector& u, const Tolerances& tols = default_tolerances());

struct LogDerivative {
    Vector coords;        // algebra coordinates of F(u)^-1 dF/du_j
    double off_residual;  // distance of the difference quotient from the algebra span
};

/// Central-difference left logarithmic derivative
/// F(u)^-1 (F(u + h e_j) - F(u - h e_j)) / (2h), projected onto the algebra
/// basis. OffAlgebra when the projection residual exceeds 100 h^2.
LogDerivative left_log_derivative(const Immersion& imm, const Vector& u, int j, double h,
                                  const Tolerances& tols = default_tolerances());

/// Orthonormal adapted frame at F(u0), everything left-translated to the
/// identity: tangent vectors first, then a normal basis; eta defaults to the
/// first normal vector with its first significant coordinate made positive.
struct PointFrame {
    Matrix point;
    Matrix raw_tangent;  // n x m: columns are the translated coordinate frame
    std::vector<Vector> tangent;
    std::vector<Vector> normal;
    Vector eta;
    BilinearForm tangent_form;
    BilinearForm normal_form;
};

PointFrame frame_at(const Immersion& imm, const Vector& u0, const Tolerances& tols = default_tolerances());

/// Optional perturbation of the unit normal extension used to probe
/// extension-independence: the extended field interpolates eta + sum_j
/// (u - u0)_j * vectors[j] before projection, so it still equals eta at u0.
struct NormalDrift {
    std::vector<Vector> vectors;
};

/// Translated oriented unit normal extension at source point u: the frame's
/// eta is projected onto the normal space at u and renormalized.
/// OrientationFlip when the normal spaces at u and u0 tilt by more than 45
/// degrees (or the projection degenerates).
Vector normal_field(const Immersion& imm, const Vector& u0, const Vector& eta, const Vector& u, double h,
                    const NormalDrift* drift = nullptr, const Tolerances& tols = default_tolerances());

/// d/dt <N(u0 + t w), b> at t = 0 by central differences, where w is the
/// source direction with dF(w) = v (v given in translated algebra
/// coordinates, must be tangent) and N is the oriented unit normal extension
/// of eta. This is the derivative of the normal coefficient function paired
/// against the left-invariant extension of b.
double normal_coefficient_derivative(const Immersion& imm, const Vector& u0, const Vector& eta,
                                     const Vector& v, const Vector& b, double h,
                                     const NormalDrift* drift = nullptr,
                                     const Tolerances& tols = default_tolerances());

} // namespace liecurv
