#include "bergman/types.hpp"

namespace bergman {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::PoleAtPoint: return "pole-at-point";
    case ErrorCode::DegeneratePair: return "degenerate-pair";
    case ErrorCode::EvaluationOutsideDomain: return "evaluation-outside-domain";
    case ErrorCode::ChartUnavailable: return "chart-unavailable";
    case ErrorCode::ReflectionUnavailable: return "reflection-unavailable";
    case ErrorCode::SingularPoint: return "singular-point";
    case ErrorCode::PointInsideDomain: return "xi-inside-domain";
    case ErrorCode::BudgetExhausted: return "budget-exhausted";
    case ErrorCode::NonIntegrableTail: return "non-integrable-tail";
    case ErrorCode::SingularGram: return "singular-gram";
    case ErrorCode::ParseError: return "parse-error";
  }
  return "unknown";
}

}  // namespace bergman
