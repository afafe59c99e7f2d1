#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace softcone {

enum class ErrorCode {
  InvalidArgument,
  MismatchedParameters,
  MismatchedDimension,
  MissingOperand,
  MissingLabel,
  EmptySlice,
  EmptyCollection,
  EmptySequence,
  EnumerationTooLarge,
  NonFiniteResult,
  UnsupportedProperty,
  UnsupportedCone,
  NegativeAlpha,
  D4Violated,
  CNotInterior,
  ConeNotNormal,
  PreconditionFailed,
  MapDomainError,
  OutOfRange,
  BallPreconditionFailed,
  MaxIterExceeded,
  ContractionRefuted,
  FixedPointNotSharedByT,
  Schema,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace softcone
