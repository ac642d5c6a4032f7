#pragma once

#include <optional>
#include <vector>

#include "fdcat/deformation.hpp"
#include "fdcat/errors.hpp"
#include "fdcat/fock.hpp"

namespace fdcat {

struct ScanSample {
  double param = 0.0;
  /// Empty where state construction failed at this parameter.
  std::optional<double> value;
  std::optional<ErrorKind> gap;
};

/// d(param) over a uniform grid for one deformation family.
struct ScanCurve {
  DeformationSpec::Family family = DeformationSpec::Family::kLaguerre;
  double zeta = 0.0;
  double step = 0.0;
  /// Undeformed separation 2 zeta.
  double reference = 0.0;
  std::vector<ScanSample> samples;
};

struct ScanOptions {
  FactorialConvention convention = FactorialConvention::kSquared;
  TruncationOptions truncation{};
};

/// Grid points p_min + i * step for i = 0, 1, ... while <= p_max (with a
/// 1e-9 step slack so the end point is included).
std::vector<double> uniform_grid(double p_min, double p_max, double step);

/// Separation over the grid. Construction errors become gaps.
ScanCurve scan_separation(DeformationSpec::Family family, double zeta, double p_min,
                          double p_max, double step, const ScanOptions& options = {});

struct CalibrationOptions {
  FactorialConvention convention = FactorialConvention::kSquared;
  TruncationOptions truncation{};
  double coarse_step = 1e-3;
  double relative_tolerance = 1e-9;
  int max_bisections = 200;
};

/// Smallest xi > 0 with d(xi) = d_target on the L-deformation, found by a
/// coarse scan over (0, xi_max] then bisection in the first gap-free
/// bracketing interval. Throws NoCrossing or SingularBracket.
double calibrate_xi(double zeta, double d_target, double xi_max,
                    const CalibrationOptions& options = {});

}  // namespace fdcat
