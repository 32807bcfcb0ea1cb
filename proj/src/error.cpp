#include "rsv/error.hpp"

namespace rsv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidGrading: return "InvalidGrading";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::IllegalInclusion: return "IllegalInclusion";
    case ErrorCode::NotRegularSingular: return "NotRegularSingular";
    case ErrorCode::ConditionFailed: return "ConditionFailed";
    case ErrorCode::NoVanishing: return "NoVanishing";
    case ErrorCode::DegenerateRoot: return "DegenerateRoot";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NotProportional: return "NotProportional";
    case ErrorCode::NoLimit: return "NoLimit";
    case ErrorCode::ExponentTooSingular: return "ExponentTooSingular";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::NotContracting: return "NotContracting";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::ResonanceError: return "ResonanceError";
    case ErrorCode::MismatchDetected: return "MismatchDetected";
    case ErrorCode::HalfPlaneViolation: return "HalfPlaneViolation";
    case ErrorCode::TailTooLarge: return "TailTooLarge";
    case ErrorCode::RootFindingFailure: return "RootFindingFailure";
    case ErrorCode::NoAdmissibleRay: return "NoAdmissibleRay";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace rsv
