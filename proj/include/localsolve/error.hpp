#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace localsolve {

enum class ErrorCode {
  ParseError,
  NonRegular,
  BadVertexId,
  NotSymmetric,
  NotDiagonallyDominant,
  NonpositiveDiagonal,
  IndexOutOfRange,
  NotInRange,
  SingularBeyondKernel,
  ConvergenceFailure,
  BadBounds,
  PreconditionViolated,
  MemoryBudgetExceeded,
  RadiusTooLarge,
  ConstructionFailed,
  InfeasibleConditioning,
  SameVertex,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `row()` carries the offending row or
/// index for the validation errors that have one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> row = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        row_(row) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
};

}  // namespace localsolve
