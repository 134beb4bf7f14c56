#pragma once

#include <stdexcept>
#include <string>

namespace folprod {

// Failure codes shared across the library. The code name is what the CLI
// prints as the diagnostic token, so it is part of the output contract.
enum class ErrorCode {
  RootFindingFailed,
  MultiplicityAmbiguous,
  NegativeSpeed,
  NotTransverse,
  NotTransverseAtPoint,
  QuadratureNotConverged,
  NotProjectivelyInvariant,
  TooCloseToDivisor,
  OrbitNotClosed,
  InconsistentOrders,
  ContourThroughSingularity,
  NotNearInteger,
  ZeroInput,
  FactorizationFailed,
  ParseError,
  ValidationError,
  NumericalFailure,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  Error(ErrorCode code, std::string field, std::string message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + field +
                           ": " + message),
        code_(code),
        field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  // Field path for parse/validation failures ("phi", "speed.terms[2].k", ...).
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace folprod
