#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fdcat/csv.hpp"
#include "fdcat/deformation.hpp"

namespace fdcat::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 2, kDomainFailure = 3 };

/// Flags shared by every subcommand.
struct CommonConfig {
  int dim = 128;
  double floor = 1e-12;
  FactorialConvention convention = FactorialConvention::kSquared;
};

struct Fig1Config {
  CommonConfig common;
  double zeta2 = 2.0;
  double q_min = 0.5;
  double q_max = 2.0;
  double q_step = 0.01;
  double xi_min = 0.0;
  double xi_max = 1.2;
  double xi_step = 0.005;
};

struct Fig2Config {
  CommonConfig common;
  double zeta2 = 2.0;
  /// Undeformed reference uses alpha^2; negative means "same as zeta2".
  double alpha2 = -1.0;
  double xi = 0.45048;
  double gamma_t_max = 3.0;
  double step = 0.05;
  std::vector<int> ns{1, 2, 3};
  bool oracle = false;
};

struct Fig3Config {
  CommonConfig common;
  double gamma_t = 1.0;
  int n = 2;
  double zeta2_min = 0.1;
  double zeta2_max = 2.0;
  double step = 0.05;
  /// Separation target is 2 sqrt(alpha2); also the undeformed reference.
  double alpha2 = 2.0;
  double xi_max = 1.0;
};

/// Separation vs deformation parameter: q-series, xi-series and the
/// undeformed line, long format (series,param,value,status).
CsvTable make_fig1(const Fig1Config& config);

/// Visibility vs gamma t for the undeformed cat and the L-deformed cat at
/// each requested n.
CsvTable make_fig2(const Fig2Config& config);

/// Visibility at fixed gamma t vs zeta^2, with xi recalibrated per point so
/// the separation stays at 2 sqrt(alpha2).
CsvTable make_fig3(const Fig3Config& config);

/// Entry point. `args` excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdcat::cli
