#include "fdcat/deformation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "fdcat/errors.hpp"
#include "series.hpp"

namespace fdcat {
namespace {

constexpr double kLaguerreSingularRatio = 1e-12;

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw DomainError(ErrorKind::kInvalidParameter,
                      std::string(name) + " must be finite");
  }
}

/// log(sinh(x)) for x > 0 without overflow.
double log_sinh(double x) {
  if (x < 20.0) return std::log(std::sinh(x));
  return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
}

/// One factor f(k) of the deformation, as sign and log|f|.
struct Factor {
  enum class Status { kRegular, kZero, kPole };
  Status status = Status::kRegular;
  int sign = 1;
  double log_abs = 0.0;
};

/// Produces f(0), f(1), ... in order. Laguerre polynomials are advanced by
/// their recurrence so a sweep over n is linear in n.
class FactorStream {
 public:
  explicit FactorStream(const DeformationSpec& spec)
      : family_(spec.family()), parameter_(spec.parameter()) {
    if (family_ == DeformationSpec::Family::kQ) {
      lambda_ = std::abs(std::log(parameter_));
    }
    if (family_ == DeformationSpec::Family::kLaguerre) {
      x_ = parameter_ * parameter_;
    }
  }

  Factor next() {
    const int n = n_++;
    switch (family_) {
      case DeformationSpec::Family::kIdentity:
        return {};
      case DeformationSpec::Family::kQ:
        return q_factor(n);
      case DeformationSpec::Family::kLaguerre:
        return laguerre_factor(n);
    }
    return {};
  }

 private:
  Factor q_factor(int n) const {
    // (q^n - q^-n)/(q - q^-1) = sinh(n lambda)/sinh(lambda), symmetric in
    // q <-> 1/q; lambda = 0 is the undeformed limit.
    if (n == 0 || lambda_ == 0.0) return {};
    Factor out;
    out.log_abs = 0.5 * (log_sinh(n * lambda_) - log_sinh(lambda_) - std::log(n));
    return out;
  }

  Factor laguerre_factor(int n) {
    double l0 = 1.0;
    double l1 = 1.0;
    if (n == 0) {
      l0 = l0_cur_ = 1.0;
      l1 = l1_cur_ = 1.0;
    } else if (n == 1) {
      l0_prev_ = l0_cur_;
      l1_prev_ = l1_cur_;
      l0 = l0_cur_ = 1.0 - x_;
      l1 = l1_cur_ = 2.0 - x_;
    } else {
      const int k = n - 1;
      l0 = ((2 * k + 1 - x_) * l0_cur_ - k * l0_prev_) / (k + 1);
      l1 = ((2 * k + 2 - x_) * l1_cur_ - (k + 1) * l1_prev_) / (k + 1);
      l0_prev_ = l0_cur_;
      l1_prev_ = l1_cur_;
      l0_cur_ = l0;
      l1_cur_ = l1;
    }
    Factor out;
    if (std::abs(l0) < kLaguerreSingularRatio * std::max(1.0, std::abs(l1)) ||
        !std::isfinite(l0) || !std::isfinite(l1)) {
      out.status = Factor::Status::kPole;
      return out;
    }
    if (l1 == 0.0) {
      out.status = Factor::Status::kZero;
      out.sign = 0;
      return out;
    }
    const double ratio = l1 / ((n + 1) * l0);
    out.sign = ratio > 0.0 ? 1 : -1;
    out.log_abs = std::log(std::abs(ratio));
    return out;
  }

  DeformationSpec::Family family_;
  double parameter_;
  double lambda_ = 0.0;
  double x_ = 0.0;
  int n_ = 0;
  double l0_prev_ = 0.0, l0_cur_ = 1.0;
  double l1_prev_ = 0.0, l1_cur_ = 1.0;
};

[[noreturn]] void throw_pole(const DeformationSpec& spec, int n) {
  throw DomainError(ErrorKind::kSingularDeformation,
                    spec.describe() + ": L^0_n(xi^2) vanishes at n = " +
                        std::to_string(n));
}

}  // namespace

std::string_view to_string(FactorialConvention convention) {
  switch (convention) {
    case FactorialConvention::kSquared: return "squared";
    case FactorialConvention::kLinear: return "linear";
  }
  return "unknown";
}

std::optional<FactorialConvention> parse_convention(std::string_view name) {
  if (name == "squared") return FactorialConvention::kSquared;
  if (name == "linear") return FactorialConvention::kLinear;
  return std::nullopt;
}

std::string_view to_string(DeformationSpec::Family family) {
  switch (family) {
    case DeformationSpec::Family::kIdentity: return "identity";
    case DeformationSpec::Family::kQ: return "q";
    case DeformationSpec::Family::kLaguerre: return "laguerre";
  }
  return "unknown";
}

DeformationSpec DeformationSpec::identity() {
  return DeformationSpec(Family::kIdentity, 0.0);
}

DeformationSpec DeformationSpec::q_deform(double q) {
  require_finite(q, "q");
  if (q <= 0.0) {
    throw DomainError(ErrorKind::kInvalidParameter, "q must be positive");
  }
  return DeformationSpec(Family::kQ, q);
}

DeformationSpec DeformationSpec::laguerre(double xi) {
  require_finite(xi, "xi");
  if (xi < 0.0) {
    throw DomainError(ErrorKind::kInvalidParameter, "xi must be non-negative");
  }
  return DeformationSpec(Family::kLaguerre, xi);
}

DeformationSpec DeformationSpec::of(Family family, double parameter) {
  switch (family) {
    case Family::kIdentity: return identity();
    case Family::kQ: return q_deform(parameter);
    case Family::kLaguerre: return laguerre(parameter);
  }
  return identity();
}

DeformationSpec DeformationSpec::with_convention(
    FactorialConvention convention) const {
  DeformationSpec out = *this;
  out.convention_ = convention;
  return out;
}

std::string DeformationSpec::describe() const {
  char buffer[96];
  switch (family_) {
    case Family::kIdentity:
      std::snprintf(buffer, sizeof buffer, "identity");
      break;
    case Family::kQ:
      std::snprintf(buffer, sizeof buffer, "q(%.12g)", parameter_);
      break;
    case Family::kLaguerre:
      std::snprintf(buffer, sizeof buffer, "laguerre(xi=%.12g)", parameter_);
      break;
  }
  return buffer;
}

double f_value(const DeformationSpec& spec, int n) {
  if (n < 0) {
    throw DomainError(ErrorKind::kInvalidParameter, "n must be non-negative");
  }
  FactorStream stream(spec);
  Factor factor;
  for (int k = 0; k <= n; ++k) factor = stream.next();
  switch (factor.status) {
    case Factor::Status::kPole: throw_pole(spec, n);
    case Factor::Status::kZero: return 0.0;
    case Factor::Status::kRegular: break;
  }
  return factor.sign * std::exp(factor.log_abs);
}

DeformedFactorials::DeformedFactorials(const DeformationSpec& spec, int n_max) {
  const bool squared = spec.convention() == FactorialConvention::kSquared;
  const double power = squared ? 2.0 : 1.0;
  FactorStream stream(spec);
  values_.reserve(static_cast<std::size_t>(std::max(n_max + 1, 0)));
  SignedLog<double> running = SignedLog<double>::one();
  for (int k = 0; k <= n_max; ++k) {
    const Factor factor = stream.next();
    if (factor.status == Factor::Status::kPole) {
      singular_index_ = k;
      return;
    }
    SignedLog<double> term;
    if (factor.status == Factor::Status::kZero) {
      term = SignedLog<double>::zero();
    } else {
      term.sign = squared ? 1 : factor.sign;
      term.log_magnitude = power * factor.log_abs + (k > 0 ? std::log(k) : 0.0);
    }
    running = running * term;
    values_.push_back(running);
  }
}

SignedLog<double> deformed_factorial(const DeformationSpec& spec, int n) {
  if (n < 0) {
    throw DomainError(ErrorKind::kInvalidParameter, "n must be non-negative");
  }
  DeformedFactorials table(spec, n);
  if (table.singular_index()) throw_pole(spec, *table.singular_index());
  return table[n];
}

double exp_f(const DeformationSpec& spec, double x, const SeriesOptions& options) {
  require_finite(x, "x");
  const DeformedFactorials factorials(spec, options.window - 1);
  const double log_abs_x = std::log(std::abs(x));
  auto term = [&](int n) -> std::optional<SignedLog<double>> {
    if (n >= factorials.size() || factorials[n].is_zero()) return std::nullopt;
    if (n == 0) return SignedLog<double>::one() / factorials[0];
    if (x == 0.0) return SignedLog<double>::zero();
    const SignedLog<double> power{(x < 0.0 && n % 2 == 1) ? -1 : 1, n * log_abs_x};
    return power / factorials[n];
  };
  return detail::sum_window(term, options.window, options.floor,
                            "exp_f[" + spec.describe() + "]")
      .value();
}

}  // namespace fdcat
