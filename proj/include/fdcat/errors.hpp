#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fdcat {

/// Domain failures raised by the numerics. The names returned by to_string()
/// are part of the CLI contract and are printed verbatim on error.
enum class ErrorKind {
  kInvalidParameter,
  kSingularDeformation,
  kNonConvergent,
  kNonNormalizable,
  kNegativeDeformedFactorial,
  kTruncationTooSmall,
  kDegenerateSuperposition,
  kDegenerateDenominator,
  kNoCrossing,
  kSingularBracket,
};

std::string_view to_string(ErrorKind kind);

class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& detail,
              std::optional<int> required_dim = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }

  /// Set for kTruncationTooSmall when an estimate of the needed dimension
  /// is available.
  std::optional<int> required_dim() const noexcept { return required_dim_; }

 private:
  ErrorKind kind_;
  std::optional<int> required_dim_;
};

}  // namespace fdcat
