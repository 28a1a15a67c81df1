#include "lapsep/errors.hpp"

namespace lapsep {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyEdgeSet: return "EmptyEdgeSet";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotTwoByQ: return "NotTwoByQ";
    case ErrorCode::DegreeCriterionViolated: return "DegreeCriterionViolated";
    case ErrorCode::NotLineSumSymmetric: return "NotLineSumSymmetric";
    case ErrorCode::DegenerateCycle: return "DegenerateCycle";
    case ErrorCode::EdgeNotSeparableLocal: return "EdgeNotSeparableLocal";
    case ErrorCode::NoMatchedEdges: return "NoMatchedEdges";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::AssertionFailure: return "AssertionFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

}  // namespace lapsep
