#include "folprod/error.hpp"

namespace folprod {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::RootFindingFailed: return "RootFindingFailed";
    case ErrorCode::MultiplicityAmbiguous: return "MultiplicityAmbiguous";
    case ErrorCode::NegativeSpeed: return "NegativeSpeed";
    case ErrorCode::NotTransverse: return "NotTransverse";
    case ErrorCode::NotTransverseAtPoint: return "NotTransverseAtPoint";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NotProjectivelyInvariant: return "NotProjectivelyInvariant";
    case ErrorCode::TooCloseToDivisor: return "TooCloseToDivisor";
    case ErrorCode::OrbitNotClosed: return "OrbitNotClosed";
    case ErrorCode::InconsistentOrders: return "InconsistentOrders";
    case ErrorCode::ContourThroughSingularity: return "ContourThroughSingularity";
    case ErrorCode::NotNearInteger: return "NotNearInteger";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "UnknownError";
}

}  // namespace folprod
