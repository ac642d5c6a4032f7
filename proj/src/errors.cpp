#include "fdcat/errors.hpp"

namespace fdcat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "InvalidParameter";
    case ErrorKind::kSingularDeformation: return "SingularDeformation";
    case ErrorKind::kNonConvergent: return "NonConvergent";
    case ErrorKind::kNonNormalizable: return "NonNormalizable";
    case ErrorKind::kNegativeDeformedFactorial: return "NegativeDeformedFactorial";
    case ErrorKind::kTruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::kDegenerateSuperposition: return "DegenerateSuperposition";
    case ErrorKind::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::kNoCrossing: return "NoCrossing";
    case ErrorKind::kSingularBracket: return "SingularBracket";
  }
  return "Unknown";
}

DomainError::DomainError(ErrorKind kind, const std::string& detail,
                         std::optional<int> required_dim)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      required_dim_(required_dim) {}

}  // namespace fdcat
