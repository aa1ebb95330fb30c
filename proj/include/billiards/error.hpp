#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace billiards {

enum class ErrorCode {
  NonConvergence,
  DegeneratePolynomial,
  NonUnitSeries,
  InvalidDegree,
  InvalidArgument,
  SingularPoint,
  NonReducedInfinity,
  NotOnCurve,
  IndeterminateSecant,
  NoZeroRoot,
  IndeterminateReflection,
  BudgetExceeded,
  ZeroInput,
  EscapedDomain,
  TangentialHit,
  NotDivisible,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (orbit trees, scanners, the CLI) can attribute it without parsing
/// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace billiards
