#include "billiards/error.hpp"

namespace billiards {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DegeneratePolynomial: return "DegeneratePolynomial";
    case ErrorCode::NonUnitSeries: return "NonUnitSeries";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::NonReducedInfinity: return "NonReducedInfinity";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::IndeterminateSecant: return "IndeterminateSecant";
    case ErrorCode::NoZeroRoot: return "NoZeroRoot";
    case ErrorCode::IndeterminateReflection: return "IndeterminateReflection";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::EscapedDomain: return "EscapedDomain";
    case ErrorCode::TangentialHit: return "TangentialHit";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace billiards
