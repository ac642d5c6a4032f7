#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdcat/signed_log.hpp"

namespace fdcat {

/// How f enters the deformed factorial.
///
/// kSquared: the deformed annihilator is A = a f(n), so
///   [n]_f! = f(0)^2 * prod_{k=1..n} k f(k)^2.
///   This turns the q-deformation into the usual [n]_q! and is the convention
///   that puts the first equal-separation L-deformation point at xi ~ 0.45048.
/// kLinear: A = a sqrt(f(n)), [n]_f! = f(0) * prod_{k=1..n} k f(k).
///   Can go negative for the L-deformation; such states are rejected.
enum class FactorialConvention { kSquared, kLinear };

std::string_view to_string(FactorialConvention convention);
std::optional<FactorialConvention> parse_convention(std::string_view name);

/// Which f(n) is in force. Immutable value type.
class DeformationSpec {
 public:
  enum class Family { kIdentity, kQ, kLaguerre };

  static DeformationSpec identity();
  /// f(n) = sqrt((q^n - q^-n) / (n (q - q^-1))), f(0) = 1. Requires q > 0.
  static DeformationSpec q_deform(double q);
  /// f(n) = L^1_n(xi^2) / ((n + 1) L^0_n(xi^2)). Requires xi >= 0.
  static DeformationSpec laguerre(double xi);
  /// Identity ignores `parameter`.
  static DeformationSpec of(Family family, double parameter);

  DeformationSpec with_convention(FactorialConvention convention) const;

  Family family() const { return family_; }
  double parameter() const { return parameter_; }
  FactorialConvention convention() const { return convention_; }

  std::string describe() const;

 private:
  DeformationSpec(Family family, double parameter)
      : family_(family), parameter_(parameter) {}

  Family family_ = Family::kIdentity;
  double parameter_ = 0.0;
  FactorialConvention convention_ = FactorialConvention::kSquared;
};

std::string_view to_string(DeformationSpec::Family family);

/// Associated Laguerre polynomial L^m_n(x) by the three-term recurrence
///   (k+1) L_{k+1} = (2k + 1 + m - x) L_k - (k + m) L_{k-1}.
template <typename Scalar>
Scalar laguerre(int m, int n, Scalar x) {
  Scalar previous = Scalar(1);
  if (n == 0) return previous;
  Scalar current = Scalar(1 + m) - x;
  for (int k = 1; k < n; ++k) {
    const Scalar next =
        ((Scalar(2 * k + 1 + m) - x) * current - Scalar(k + m) * previous) /
        Scalar(k + 1);
    previous = current;
    current = next;
  }
  return current;
}

/// f(n). Throws SingularDeformation at a Laguerre pole and InvalidParameter
/// for n < 0.
double f_value(const DeformationSpec& spec, int n);

/// [n]_f! in signed log form, honouring the spec's convention.
SignedLog<double> deformed_factorial(const DeformationSpec& spec, int n);

/// [0]_f! .. [n_max]_f! computed in a single pass. Stops early at the first
/// singular factor (Laguerre pole, or f(k) == 0 which zeroes the product);
/// size() then reports how many leading entries are valid.
class DeformedFactorials {
 public:
  DeformedFactorials(const DeformationSpec& spec, int n_max);

  int size() const { return static_cast<int>(values_.size()); }
  const SignedLog<double>& operator[](int n) const { return values_[n]; }

  /// Index of the first factor that could not be formed, if any.
  std::optional<int> singular_index() const { return singular_index_; }

 private:
  std::vector<SignedLog<double>> values_;
  std::optional<int> singular_index_;
};

/// Options for deformed power series.
struct SeriesOptions {
  /// Terms below floor * |sum| count as negligible.
  double floor = 1e-15;
  /// Number of terms examined. The last three must be negligible.
  int window = 512;
};

/// exp_f(x) = sum_n x^n / [n]_f!. For the identity deformation this is e^x.
/// Throws NonConvergent when terms near the end of the window still matter.
double exp_f(const DeformationSpec& spec, double x, const SeriesOptions& options = {});

}  // namespace fdcat
