#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qind {

enum class ErrorCode {
  NotNormalized,
  InvalidDensity,
  DegenerateSource,
  ZeroField,
  InvalidArgument,
  InvalidSetup,
  UnknownTerm,
  EmptyClass,
  NotSingleton,
  PreconditionViolated,
  IncompleteTable,
  NotInCarrier,
  AxiomsViolated,
  MalformedTable,
  NonTransitiveZeroes,
  OutOfRange,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidDensity: return "InvalidDensity";
    case ErrorCode::DegenerateSource: return "DegenerateSource";
    case ErrorCode::ZeroField: return "ZeroField";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSetup: return "InvalidSetup";
    case ErrorCode::UnknownTerm: return "UnknownTerm";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::NotSingleton: return "NotSingleton";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::NotInCarrier: return "NotInCarrier";
    case ErrorCode::AxiomsViolated: return "AxiomsViolated";
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::NonTransitiveZeroes: return "NonTransitiveZeroes";
    case ErrorCode::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qind
