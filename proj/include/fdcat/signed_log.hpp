#pragma once

#include <cmath>
#include <limits>

namespace fdcat {

/// A real number stored as sign * exp(log_magnitude). Used for factorial-like
/// products that leave the double range long before the series they feed
/// stop mattering.
template <typename Scalar>
struct SignedLog {
  int sign = 1;  // -1, 0 or +1; log_magnitude is meaningless when 0
  Scalar log_magnitude = Scalar(0);

  static SignedLog zero() { return {0, Scalar(0)}; }
  static SignedLog one() { return {1, Scalar(0)}; }

  static SignedLog from_value(Scalar value) {
    if (value == Scalar(0)) return zero();
    using std::abs;
    using std::log;
    return {value > Scalar(0) ? 1 : -1, log(abs(value))};
  }

  Scalar value() const {
    using std::exp;
    if (sign == 0) return Scalar(0);
    return Scalar(sign) * exp(log_magnitude);
  }

  bool is_zero() const { return sign == 0; }
};

template <typename Scalar>
SignedLog<Scalar> operator*(const SignedLog<Scalar>& a,
                            const SignedLog<Scalar>& b) {
  if (a.sign == 0 || b.sign == 0) return SignedLog<Scalar>::zero();
  return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
}

template <typename Scalar>
SignedLog<Scalar> operator/(const SignedLog<Scalar>& a,
                            const SignedLog<Scalar>& b) {
  if (a.sign == 0) return SignedLog<Scalar>::zero();
  if (b.sign == 0) {
    return {a.sign, std::numeric_limits<Scalar>::infinity()};
  }
  return {a.sign * b.sign, a.log_magnitude - b.log_magnitude};
}

}  // namespace fdcat
