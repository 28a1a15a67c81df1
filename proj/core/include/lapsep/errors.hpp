#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lapsep {

// Machine-readable failure categories. The CLI prints the name and maps
// AssertionFailure to exit code 3, everything else to exit code 2.
enum class ErrorCode {
  EmptyEdgeSet,
  OutOfBounds,
  LoopEdge,
  NotABijection,
  DimensionMismatch,
  NotSymmetric,
  ZeroVector,
  NotTwoByQ,
  DegreeCriterionViolated,
  NotLineSumSymmetric,
  DegenerateCycle,
  EdgeNotSeparableLocal,
  NoMatchedEdges,
  NotNormalized,
  NotPSD,
  ParseError,
  UnknownFamily,
  TooLarge,
  AssertionFailure,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Floating comparisons scale this by the Frobenius norm of the operand.
inline constexpr double kDefaultTolerance = 1e-9;

}  // namespace lapsep
