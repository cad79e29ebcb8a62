#pragma once

#include <stdexcept>
#include <string>

namespace radii {

enum class ErrorCode {
  ParseError,
  InvalidCost,
  DiameterViolation,
  MetricViolation,
  InvalidPoint,
  OutOfDiameter,
  DuplicateClient,
  NoSuchClient,
  NoUsableFacility,
  InstanceTooLarge,
  TooLargeForExhaustive,
  InvalidSpec,
  IoError,
  UsageError,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidCost: return "InvalidCost";
    case ErrorCode::DiameterViolation: return "DiameterViolation";
    case ErrorCode::MetricViolation: return "MetricViolation";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::OutOfDiameter: return "OutOfDiameter";
    case ErrorCode::DuplicateClient: return "DuplicateClient";
    case ErrorCode::NoSuchClient: return "NoSuchClient";
    case ErrorCode::NoUsableFacility: return "NoUsableFacility";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace radii
