#pragma once

// Internal: windowed summation of series whose terms are only available in
// signed log form.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fdcat/errors.hpp"
#include "fdcat/signed_log.hpp"
#include "fdcat/summation.hpp"

namespace fdcat::detail {

struct WindowedSum {
  /// Sum divided by exp(log_scale).
  double scaled = 0.0;
  double log_scale = 0.0;
  /// Number of terms actually formed (may be < window after a benign
  /// singular termination).
  int terms = 0;

  double value() const { return scaled * std::exp(log_scale); }
};

/// Sums term(0) .. term(window - 1). `term` returns nullopt when the term
/// cannot be formed (pole or zero in a deformed factorial); that is accepted
/// as the end of the series only if the preceding term is already below
/// floor * |sum|. The last three terms of a full window must be negligible.
template <typename TermFn>
WindowedSum sum_window(TermFn&& term, int window, double floor,
                       const std::string& what) {
  std::vector<SignedLog<double>> terms;
  terms.reserve(static_cast<std::size_t>(window));
  std::optional<int> singular_at;
  for (int n = 0; n < window; ++n) {
    std::optional<SignedLog<double>> t = term(n);
    if (!t) {
      singular_at = n;
      break;
    }
    terms.push_back(*t);
  }

  double scale = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.sign != 0) scale = std::max(scale, t.log_magnitude);
  }
  WindowedSum out;
  out.terms = static_cast<int>(terms.size());
  if (!std::isfinite(scale)) {
    // All-zero series (or nothing formed at all).
    if (terms.empty()) {
      throw DomainError(ErrorKind::kSingularDeformation,
                        what + ": first term is singular");
    }
    out.scaled = 0.0;
    out.log_scale = 0.0;
    return out;
  }

  CompensatedSum<double> sum;
  for (const auto& t : terms) {
    if (t.sign != 0) sum += t.sign * std::exp(t.log_magnitude - scale);
  }
  out.scaled = sum.value();
  out.log_scale = scale;

  const double log_threshold = std::log(floor) + std::log(std::abs(out.scaled)) + scale;
  auto negligible = [&](const SignedLog<double>& t) {
    return t.sign == 0 || t.log_magnitude < log_threshold;
  };

  if (singular_at) {
    if (!negligible(terms.back())) {
      throw DomainError(ErrorKind::kSingularDeformation,
                        what + ": singular deformed factorial at n = " +
                            std::to_string(*singular_at));
    }
    return out;
  }
  const int n = static_cast<int>(terms.size());
  for (int i = std::max(0, n - 3); i < n; ++i) {
    if (!negligible(terms[static_cast<std::size_t>(i)])) {
      throw DomainError(ErrorKind::kNonConvergent,
                        what + ": terms still significant at the end of a " +
                            std::to_string(window) + "-term window");
    }
  }
  return out;
}

}  // namespace fdcat::detail
