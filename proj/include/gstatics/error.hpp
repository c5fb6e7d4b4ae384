#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gstatics {

enum class ErrorCode {
  InvalidArgument,
  NonFiniteInput,
  ImageNotInKernel,
  NotClosedSurface,
  BoundarySquareNonzero,
  NotInjective,
  NotExact,
  NotACycle,
  PreimageResidualTooLarge,
  DegenerateEdge,
  DegenerateCell,
  Infeasible,
  CollinearProbePoint,
  GluingViolated,
  NonPositiveWeight,
  UnstableStepSize,
  SchemaError,
  ValidationFailed,
};

std::string_view to_string(ErrorCode code);

// Thrown by every library operation; `code()` identifies the failed contract.
class StaticsError : public std::runtime_error {
 public:
  StaticsError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Failures of a numerical gate (residual, closure, exactness) as opposed to
  // malformed input.
  bool is_numerical() const noexcept {
    switch (code_) {
      case ErrorCode::ImageNotInKernel:
      case ErrorCode::BoundarySquareNonzero:
      case ErrorCode::NotInjective:
      case ErrorCode::NotExact:
      case ErrorCode::NotACycle:
      case ErrorCode::PreimageResidualTooLarge:
      case ErrorCode::Infeasible:
      case ErrorCode::CollinearProbePoint:
      case ErrorCode::GluingViolated:
      case ErrorCode::UnstableStepSize:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::ImageNotInKernel: return "ImageNotInKernel";
    case ErrorCode::NotClosedSurface: return "NotClosedSurface";
    case ErrorCode::BoundarySquareNonzero: return "BoundarySquareNonzero";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::PreimageResidualTooLarge: return "PreimageResidualTooLarge";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::DegenerateCell: return "DegenerateCell";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::CollinearProbePoint: return "CollinearProbePoint";
    case ErrorCode::GluingViolated: return "GluingViolated";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::UnstableStepSize: return "UnstableStepSize";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
  }
  return "Unknown";
}

}  // namespace gstatics
