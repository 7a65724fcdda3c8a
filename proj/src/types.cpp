#include "liecurv/types.hpp"

#include <map>

namespace liecurv {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::DegenerateSubspace: return "DegenerateSubspace";
    case ErrorCode::LinearlyDependent: return "LinearlyDependent";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotUnitNormal: return "NotUnitNormal";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::DegenerateTangent: return "DegenerateTangent";
    case ErrorCode::DegenerateNormal: return "DegenerateNormal";
    case ErrorCode::JacobiViolated: return "JacobiViolated";
    case ErrorCode::NotAdInvariant: return "NotAdInvariant";
    case ErrorCode::OffAlgebra: return "OffAlgebra";
    case ErrorCode::OrientationFlip: return "OrientationFlip";
    case ErrorCode::ExpBound: return "ExpBound";
    case ErrorCode::NumericalCheck: return "NumericalCheck";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::NotUmbilic: return "NotUmbilic";
    case ErrorCode::InconsistentGaussTerm: return "InconsistentGaussTerm";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool Tolerances::set(const std::string& name, double value) {
    const std::map<std::string, double Tolerances::*> fields = {
        {"tol", &Tolerances::tol},
        {"tol_sym", &Tolerances::tol_sym},
        {"tol_degenerate", &Tolerances::tol_degenerate},
        {"cluster_rel", &Tolerances::cluster_rel},
        {"tol_commute", &Tolerances::tol_commute},
        {"tol_jacobi", &Tolerances::tol_jacobi},
        {"tol_closed", &Tolerances::tol_closed},
        {"tol_cc", &Tolerances::tol_cc},
        {"fd_step", &Tolerances::fd_step},
        {"tol_fd", &Tolerances::tol_fd},
        {"exact_verdict", &Tolerances::exact_verdict},
        {"fd_verdict", &Tolerances::fd_verdict},
        {"eigvec_cond_limit", &Tolerances::eigvec_cond_limit},
        {"exp_norm_bound", &Tolerances::exp_norm_bound},
        {"cc_reject_floor", &Tolerances::cc_reject_floor},
    };
    auto it = fields.find(name);
    if (it == fields.end()) return false;
    this->*(it->second) = value;
    return true;
}

Tolerances default_tolerances() { return Tolerances{}; }

} // namespace liecurv
