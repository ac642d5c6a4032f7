#include "fdcat/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fdcat/errors.hpp"
#include "fdcat/summation.hpp"
#include "series.hpp"

namespace fdcat {
namespace {

void require_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError(ErrorKind::kInvalidParameter, "eta must lie in (0, 1]");
  }
}

}  // namespace

double visibility_undeformed(double alpha, double eta) {
  require_eta(eta);
  return std::exp(-2.0 * alpha * alpha * (1.0 - eta));
}

double visibility_deformed(const DeformationSpec& spec, double zeta, int n, double eta,
                           const SeriesOptions& options) {
  require_eta(eta);
  if (n < 0) {
    throw DomainError(ErrorKind::kInvalidParameter, "n must be non-negative");
  }
  // The series is only meaningful for a state that exists.
  (void)f_coherent(spec, zeta);

  const double s = zeta * zeta * (1.0 - eta);
  const double log_s = std::log(s);
  const DeformedFactorials factorials(spec, n + options.window - 1);

  // Positive series: (n+k)!/k! s^k / [n+k]_f!, with the sign of [n+k]_f!.
  auto term = [&](int k) -> std::optional<SignedLog<double>> {
    const int index = n + k;
    if (index >= factorials.size() || factorials[index].is_zero()) return std::nullopt;
    if (k > 0 && s == 0.0) return SignedLog<double>::zero();
    const double log_rising = std::lgamma(index + 1.0) - std::lgamma(k + 1.0);
    const SignedLog<double> numerator{1, log_rising + (k > 0 ? k * log_s : 0.0)};
    return numerator / factorials[index];
  };

  const std::string what = "visibility series[" + spec.describe() + "]";
  const detail::WindowedSum denominator =
      detail::sum_window(term, options.window, options.floor, what);
  if (!(denominator.scaled > 0.0)) {
    throw DomainError(ErrorKind::kDegenerateDenominator,
                      what + ": positive series is not positive");
  }

  // Same terms with (-1)^k, scaled identically. The window was already
  // validated against the positive series, which bounds this one.
  CompensatedSum<double> alternating;
  for (int k = 0; k < denominator.terms; ++k) {
    const SignedLog<double> t = *term(k);
    if (t.is_zero()) continue;
    const double value = t.sign * std::exp(t.log_magnitude - denominator.log_scale);
    alternating += (k % 2 == 0) ? value : -value;
  }
  return std::abs(alternating.value()) / denominator.scaled;
}

EvolvedCat evolve_cat(const DeformationSpec& spec, double zeta, double eta, int dim,
                      const TruncationOptions& truncation) {
  require_eta(eta);
  const FockState plus = f_coherent(spec, zeta, truncation);
  const FockState minus = f_coherent(spec, -zeta, truncation);
  if (plus.dim() > dim || minus.dim() > dim) {
    throw DomainError(ErrorKind::kTruncationTooSmall,
                      spec.describe() + ": state needs " + std::to_string(plus.dim()) +
                          " levels, dim is " + std::to_string(dim),
                      static_cast<int>(plus.dim()));
  }
  const FockState p = plus.embedded(dim);
  const FockState m = minus.embedded(dim);
  EvolvedCat cat;
  cat.eta = eta;
  cat.plus = evolve(dyad(p, p), eta);
  cat.minus = evolve(dyad(m, m), eta);
  cat.cross = evolve(dyad(p, m), eta);
  return cat;
}

std::complex<double> coherence_function(const OperatorMatrix& evolved_cross_dyad, int n) {
  if (n < 0 || n >= evolved_cross_dyad.rows()) {
    throw DomainError(ErrorKind::kInvalidParameter,
                      "photon number outside the truncated space");
  }
  return evolved_cross_dyad(n, n);
}

VisibilitySample visibility_sample(const EvolvedCat& cat, int n) {
  VisibilitySample sample;
  sample.n = n;
  sample.gamma_t = -std::log(cat.eta);
  sample.p_plus = coherence_function(cat.plus, n).real();
  sample.p_minus = coherence_function(cat.minus, n).real();
  sample.c_abs = std::abs(coherence_function(cat.cross, n));
  const double product = sample.p_plus * sample.p_minus;
  if (!(product > 1e-300)) {
    throw DomainError(ErrorKind::kDegenerateDenominator,
                      "P_+(n) P_-(n) underflows at n = " + std::to_string(n));
  }
  sample.value = sample.c_abs / std::sqrt(product);
  return sample;
}

VisibilitySample visibility_numeric(const DeformationSpec& spec, double zeta, int n,
                                    double eta, int dim,
                                    const TruncationOptions& truncation) {
  return visibility_sample(evolve_cat(spec, zeta, eta, dim, truncation), n);
}

}  // namespace fdcat
