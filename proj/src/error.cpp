#include "softcone/error.hpp"

namespace softcone {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MismatchedParameters: return "MismatchedParameters";
    case ErrorCode::MismatchedDimension: return "MismatchedDimension";
    case ErrorCode::MissingOperand: return "MissingOperand";
    case ErrorCode::MissingLabel: return "MissingLabel";
    case ErrorCode::EmptySlice: return "EmptySlice";
    case ErrorCode::EmptyCollection: return "EmptyCollection";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::NonFiniteResult: return "NonFiniteResult";
    case ErrorCode::UnsupportedProperty: return "UnsupportedProperty";
    case ErrorCode::UnsupportedCone: return "UnsupportedCone";
    case ErrorCode::NegativeAlpha: return "NegativeAlpha";
    case ErrorCode::D4Violated: return "D4Violated";
    case ErrorCode::CNotInterior: return "CNotInterior";
    case ErrorCode::ConeNotNormal: return "ConeNotNormal";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::MapDomainError: return "MapDomainError";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BallPreconditionFailed: return "BallPreconditionFailed";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::ContractionRefuted: return "ContractionRefuted";
    case ErrorCode::FixedPointNotSharedByT: return "FixedPointNotSharedByT";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace softcone
