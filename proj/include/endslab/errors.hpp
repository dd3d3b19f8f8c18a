#pragma once

#include <stdexcept>
#include <string>

namespace endslab {

enum class ErrorCode {
  InvalidSpec,
  SigmaIdenticallyZero,
  DomainTooSmall,
  SingleEnd,
  SingularSystem,
  MaximumPrincipleViolation,
  NonPositiveInput,
  NotSubsolution,
  InsufficientLayers,
  EmptyLayer,
  EmptyTrialSet,
  TailTooFat,
  ConfigError,
  IoError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::SigmaIdenticallyZero: return "SigmaIdenticallyZero";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::SingleEnd: return "SingleEnd";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::MaximumPrincipleViolation: return "MaximumPrincipleViolation";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::NotSubsolution: return "NotSubsolution";
    case ErrorCode::InsufficientLayers: return "InsufficientLayers";
    case ErrorCode::EmptyLayer: return "EmptyLayer";
    case ErrorCode::EmptyTrialSet: return "EmptyTrialSet";
    case ErrorCode::TailTooFat: return "TailTooFat";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace endslab
