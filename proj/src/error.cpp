#include "localsolve/error.hpp"

namespace localsolve {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonRegular: return "NonRegular";
    case ErrorCode::BadVertexId: return "BadVertexId";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotDiagonallyDominant: return "NotDiagonallyDominant";
    case ErrorCode::NonpositiveDiagonal: return "NonpositiveDiagonal";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotInRange: return "NotInRange";
    case ErrorCode::SingularBeyondKernel: return "SingularBeyondKernel";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::BadBounds: return "BadBounds";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::InfeasibleConditioning: return "InfeasibleConditioning";
    case ErrorCode::SameVertex: return "SameVertex";
  }
  return "Unknown";
}

}  // namespace localsolve
