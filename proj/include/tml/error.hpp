#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tml {

enum class ErrorCode {
  NotPrime,
  TooSmall,
  ZeroExponent,
  TooLarge,
  BadResidue,
  DomainError,
  PoleError,
  QuadratureFailure,
  TrivialPower,
  PreconditionViolated,
  DegenerateExponent,
  ReducibleHint,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::ZeroExponent: return "ZeroExponent";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadResidue: return "BadResidue";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::TrivialPower: return "TrivialPower";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DegenerateExponent: return "DegenerateExponent";
    case ErrorCode::ReducibleHint: return "ReducibleHint";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace tml
