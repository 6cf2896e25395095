#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bergman {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class ErrorCode {
  InvalidArgument,
  PoleAtPoint,
  DegeneratePair,
  EvaluationOutsideDomain,
  ChartUnavailable,
  ReflectionUnavailable,
  SingularPoint,
  PointInsideDomain,
  BudgetExhausted,
  NonIntegrableTail,
  SingularGram,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code so the
/// CLI can map it onto exit statuses and report entries.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A point of the extended complex plane. Infinity is an explicit flag and is
/// never represented by an overflowed double.
struct ExtendedPoint {
  Complex value{};
  bool infinite = false;

  static ExtendedPoint finite(Complex z) { return {z, false}; }
  static ExtendedPoint infinity() { return {Complex{}, true}; }
};

}  // namespace bergman
