#include "fdcat/calibration.hpp"

#include <cmath>
#include <string>

#include "fdcat/parallel.hpp"

namespace fdcat {
namespace {

std::optional<double> try_separation(const DeformationSpec& spec, double zeta,
                                     const TruncationOptions& truncation) {
  try {
    return separation(spec, zeta, truncation);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

std::vector<double> uniform_grid(double p_min, double p_max, double step) {
  if (!std::isfinite(p_min) || !std::isfinite(p_max) || !std::isfinite(step) ||
      !(p_min < p_max) || !(step > 0.0)) {
    throw DomainError(ErrorKind::kInvalidParameter,
                      "grid needs finite p_min < p_max and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((p_max - p_min) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = p_min + static_cast<double>(i) * step;
  return grid;
}

ScanCurve scan_separation(DeformationSpec::Family family, double zeta, double p_min,
                          double p_max, double step, const ScanOptions& options) {
  ScanCurve curve;
  curve.family = family;
  curve.zeta = zeta;
  curve.step = step;
  curve.reference = 2.0 * zeta;
  const std::vector<double> grid = uniform_grid(p_min, p_max, step);
  curve.samples.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    ScanSample& sample = curve.samples[i];
    sample.param = grid[i];
    try {
      const DeformationSpec spec =
          DeformationSpec::of(family, grid[i]).with_convention(options.convention);
      sample.value = separation(spec, zeta, options.truncation);
    } catch (const DomainError& e) {
      sample.gap = e.kind();
    }
  });
  return curve;
}

double calibrate_xi(double zeta, double d_target, double xi_max,
                    const CalibrationOptions& options) {
  if (!(d_target > 0.0) || !std::isfinite(d_target)) {
    throw DomainError(ErrorKind::kInvalidParameter, "d_target must be positive");
  }
  if (!(xi_max > 0.0)) {
    throw DomainError(ErrorKind::kInvalidParameter, "xi_max must be positive");
  }
  const double tolerance = options.relative_tolerance * d_target;
  auto mismatch = [&](double xi) -> std::optional<double> {
    const DeformationSpec spec =
        DeformationSpec::laguerre(xi).with_convention(options.convention);
    const std::optional<double> d = try_separation(spec, zeta, options.truncation);
    if (!d) return std::nullopt;
    return *d - d_target;
  };

  const std::vector<double> grid = uniform_grid(0.0, xi_max, options.coarse_step);
  std::vector<std::optional<double>> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { values[i] = mismatch(grid[i]); });

  // Start from the first point that is clearly off target, so the undeformed
  // touch at xi = 0 (when d_target = 2 zeta) is not mistaken for a crossing.
  std::size_t previous = 0;
  while (previous < grid.size() &&
         !(values[previous] && std::abs(*values[previous]) > tolerance)) {
    ++previous;
  }

  bool bracket_blocked = false;
  bool gap_since_previous = false;
  for (std::size_t i = previous + 1; i < grid.size(); ++i) {
    if (!values[i]) {
      gap_since_previous = true;
      continue;
    }
    const double g_prev = *values[previous];
    const double g_here = *values[i];
    if (std::abs(g_here) <= tolerance && !gap_since_previous) return grid[i];
    if (sign_of(g_prev) * sign_of(g_here) < 0) {
      if (gap_since_previous) {
        bracket_blocked = true;
      } else {
        double lo = grid[previous];
        double hi = grid[i];
        double g_lo = g_prev;
        for (int iter = 0; iter < options.max_bisections; ++iter) {
          const double mid = 0.5 * (lo + hi);
          const std::optional<double> g_mid = mismatch(mid);
          if (!g_mid) break;
          if (std::abs(*g_mid) <= tolerance) return mid;
          if (mid == lo || mid == hi) break;
          if (sign_of(*g_mid) == sign_of(g_lo)) {
            lo = mid;
            g_lo = *g_mid;
          } else {
            hi = mid;
          }
        }
        // Gap inside the bracket, or a jump rather than a root.
        bracket_blocked = true;
      }
    }
    previous = i;
    gap_since_previous = false;
  }
  if (bracket_blocked) {
    throw DomainError(ErrorKind::kSingularBracket,
                      "every bracketing interval for d = " + std::to_string(d_target) +
                          " touches a singular parameter");
  }
  throw DomainError(ErrorKind::kNoCrossing,
                    "d(xi) never reaches " + std::to_string(d_target) + " on (0, " +
                        std::to_string(xi_max) + "]");
}

}  // namespace fdcat
