#include "fdcat/cli.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "fdcat/calibration.hpp"
#include "fdcat/coherence.hpp"
#include "fdcat/errors.hpp"
#include "fdcat/fock.hpp"
#include "fdcat/parallel.hpp"

namespace fdcat::cli {
namespace {

TruncationOptions truncation_for(const CommonConfig& common) {
  TruncationOptions options;
  options.floor = common.floor;
  options.max_dim = std::max(256, common.dim);
  return options;
}

void add_common_meta(CsvTable& table, const CommonConfig& common) {
  table.add_meta("dim", std::to_string(common.dim));
  table.add_meta("floor", common.floor);
  table.add_meta("convention", std::string(to_string(common.convention)));
}

std::string status_of(const std::optional<ErrorKind>& error) {
  return error ? std::string(to_string(*error)) : std::string("ok");
}

}  // namespace

CsvTable make_fig1(const Fig1Config& config) {
  CsvTable table;
  table.add_meta("command", "fig1");
  table.add_meta("zeta2", config.zeta2);
  table.add_meta("q_min", config.q_min);
  table.add_meta("q_max", config.q_max);
  table.add_meta("q_step", config.q_step);
  table.add_meta("xi_min", config.xi_min);
  table.add_meta("xi_max", config.xi_max);
  table.add_meta("xi_step", config.xi_step);
  add_common_meta(table, config.common);
  table.set_header({"series", "param", "value", "status"});

  const double zeta = std::sqrt(config.zeta2);
  ScanOptions options;
  options.convention = config.common.convention;
  options.truncation = truncation_for(config.common);

  auto emit = [&](const char* name, const ScanCurve& curve) {
    for (const ScanSample& s : curve.samples) {
      table.add_row({name, format_number(s.param), format_optional(s.value), status_of(s.gap)});
    }
  };
  const ScanCurve q_curve = scan_separation(DeformationSpec::Family::kQ, zeta, config.q_min,
                                            config.q_max, config.q_step, options);
  const ScanCurve xi_curve =
      scan_separation(DeformationSpec::Family::kLaguerre, zeta, config.xi_min, config.xi_max,
                      config.xi_step, options);
  emit("q", q_curve);
  emit("laguerre", xi_curve);
  for (const ScanSample& s : xi_curve.samples) {
    table.add_row({"undeformed", format_number(s.param), format_number(xi_curve.reference), "ok"});
  }
  return table;
}

CsvTable make_fig2(const Fig2Config& config) {
  const double alpha2 = config.alpha2 < 0.0 ? config.zeta2 : config.alpha2;
  CsvTable table;
  table.add_meta("command", "fig2");
  table.add_meta("zeta2", config.zeta2);
  table.add_meta("alpha2", alpha2);
  table.add_meta("xi", config.xi);
  table.add_meta("gamma_t_max", config.gamma_t_max);
  table.add_meta("step", config.step);
  std::string ns;
  for (int n : config.ns) ns += (ns.empty() ? "" : " ") + std::to_string(n);
  table.add_meta("n", ns);
  table.add_meta("oracle", config.oracle ? "true" : "false");
  add_common_meta(table, config.common);

  std::vector<std::string> header{"gamma_t", "undeformed"};
  for (int n : config.ns) header.push_back("deformed_n" + std::to_string(n));
  if (config.oracle) {
    for (int n : config.ns) header.push_back("numeric_n" + std::to_string(n));
  }
  table.set_header(header);

  const DeformationSpec spec =
      DeformationSpec::laguerre(config.xi).with_convention(config.common.convention);
  const double zeta = std::sqrt(config.zeta2);
  const TruncationOptions truncation = truncation_for(config.common);
  const std::vector<double> grid = uniform_grid(0.0, config.gamma_t_max, config.step);

  std::vector<std::vector<std::string>> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double eta = std::exp(-grid[i]);
    std::vector<std::string>& row = rows[i];
    row.push_back(format_number(grid[i]));
    row.push_back(format_number(visibility_undeformed(std::sqrt(alpha2), eta)));
    for (int n : config.ns) {
      try {
        row.push_back(format_number(visibility_deformed(spec, zeta, n, eta)));
      } catch (const DomainError&) {
        row.emplace_back();
      }
    }
    if (config.oracle) {
      std::optional<EvolvedCat> cat;
      try {
        cat = evolve_cat(spec, zeta, eta, config.common.dim, truncation);
      } catch (const DomainError&) {
      }
      for (int n : config.ns) {
        try {
          row.push_back(cat ? format_number(visibility_sample(*cat, n).value) : std::string());
        } catch (const DomainError&) {
          row.emplace_back();
        }
      }
    }
  });
  for (auto& row : rows) table.add_row(std::move(row));
  return table;
}

CsvTable make_fig3(const Fig3Config& config) {
  CsvTable table;
  table.add_meta("command", "fig3");
  table.add_meta("gamma_t", config.gamma_t);
  table.add_meta("n", std::to_string(config.n));
  table.add_meta("zeta2_min", config.zeta2_min);
  table.add_meta("zeta2_max", config.zeta2_max);
  table.add_meta("step", config.step);
  table.add_meta("alpha2", config.alpha2);
  table.add_meta("xi_max", config.xi_max);
  add_common_meta(table, config.common);
  table.set_header({"zeta2", "xi", "visibility", "undeformed", "status"});

  const double eta = std::exp(-config.gamma_t);
  const double d_target = 2.0 * std::sqrt(config.alpha2);
  const std::string undeformed = format_number(visibility_undeformed(std::sqrt(config.alpha2), eta));
  CalibrationOptions calibration;
  calibration.convention = config.common.convention;
  calibration.truncation = truncation_for(config.common);
  const std::vector<double> grid = uniform_grid(config.zeta2_min, config.zeta2_max, config.step);

  std::vector<std::vector<std::string>> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double zeta = std::sqrt(grid[i]);
    std::optional<double> xi;
    std::optional<double> visibility;
    std::optional<ErrorKind> failure;
    try {
      xi = calibrate_xi(zeta, d_target, config.xi_max, calibration);
      const DeformationSpec spec =
          DeformationSpec::laguerre(*xi).with_convention(config.common.convention);
      visibility = visibility_deformed(spec, zeta, config.n, eta);
    } catch (const DomainError& e) {
      failure = e.kind();
    }
    rows[i] = {format_number(grid[i]), format_optional(xi), format_optional(visibility),
               undeformed, status_of(failure)};
  });
  for (auto& row : rows) table.add_row(std::move(row));
  return table;
}

namespace {

struct SpecFlags {
  std::string family = "identity";
  double q = 1.0;
  double xi = 0.0;

  DeformationSpec build(FactorialConvention convention) const {
    DeformationSpec spec = DeformationSpec::identity();
    if (family == "q") spec = DeformationSpec::q_deform(q);
    if (family == "laguerre") spec = DeformationSpec::laguerre(xi);
    return spec.with_convention(convention);
  }
};

void add_common_flags(CLI::App* command, CommonConfig& common, std::string& convention) {
  command->add_option("--dim", common.dim, "Fock levels for the Kraus evolution")
      ->check(CLI::PositiveNumber);
  command->add_option("--floor", common.floor, "Relative truncation floor for states")
      ->check(CLI::Range(1e-300, 0.5));
  command->add_option("--convention", convention, "Deformed factorial convention")
      ->check(CLI::IsMember({"squared", "linear"}));
}

void add_spec_flags(CLI::App* command, SpecFlags& spec) {
  command->add_option("--spec", spec.family, "Deformation family")
      ->check(CLI::IsMember({"identity", "q", "laguerre"}));
  command->add_option("--q", spec.q, "q of the q-deformation")->check(CLI::PositiveNumber);
  command->add_option("--xi", spec.xi, "xi of the L-deformation")
      ->check(CLI::NonNegativeNumber);
}

void emit_table(const CsvTable& table, const std::string& out_path, std::ostream& out) {
  const std::string text = table.render();
  if (out_path.empty()) {
    out << text;
  } else {
    write_atomically(out_path, text);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decoherence of deformed Schroedinger cat states", "fdcat"};
  app.require_subcommand(1);

  std::string out_path;
  std::string convention_name = "squared";

  Fig1Config fig1;
  auto* fig1_cmd = app.add_subcommand("fig1", "Separation vs deformation parameter");
  fig1_cmd->add_option("--zeta2", fig1.zeta2, "zeta^2")->check(CLI::NonNegativeNumber);
  fig1_cmd->add_option("--q-min", fig1.q_min)->check(CLI::PositiveNumber);
  fig1_cmd->add_option("--q-max", fig1.q_max)->check(CLI::PositiveNumber);
  fig1_cmd->add_option("--q-step", fig1.q_step)->check(CLI::PositiveNumber);
  fig1_cmd->add_option("--xi-min", fig1.xi_min)->check(CLI::NonNegativeNumber);
  fig1_cmd->add_option("--xi-max", fig1.xi_max)->check(CLI::PositiveNumber);
  fig1_cmd->add_option("--step", fig1.xi_step, "xi grid step")->check(CLI::PositiveNumber);
  fig1_cmd->add_option("--out", out_path, "CSV output path (default stdout)");
  add_common_flags(fig1_cmd, fig1.common, convention_name);

  Fig2Config fig2;
  auto* fig2_cmd = app.add_subcommand("fig2", "Visibility vs gamma t");
  fig2_cmd->add_option("--zeta2", fig2.zeta2)->check(CLI::PositiveNumber);
  fig2_cmd->add_option("--alpha2", fig2.alpha2, "undeformed alpha^2 (default zeta2)")
      ->check(CLI::NonNegativeNumber);
  fig2_cmd->add_option("--xi", fig2.xi)->check(CLI::NonNegativeNumber);
  fig2_cmd->add_option("--gamma-t", fig2.gamma_t_max, "largest gamma t")
      ->check(CLI::PositiveNumber);
  fig2_cmd->add_option("--step", fig2.step)->check(CLI::PositiveNumber);
  fig2_cmd->add_option("--n", fig2.ns, "photon numbers")->check(CLI::NonNegativeNumber);
  fig2_cmd->add_flag("--oracle", fig2.oracle, "add Kraus-evolution columns");
  fig2_cmd->add_option("--out", out_path);
  add_common_flags(fig2_cmd, fig2.common, convention_name);

  Fig3Config fig3;
  auto* fig3_cmd = app.add_subcommand("fig3", "Visibility vs zeta^2 at equal separation");
  fig3_cmd->add_option("--gamma-t", fig3.gamma_t)->check(CLI::NonNegativeNumber);
  fig3_cmd->add_option("--n", fig3.n)->check(CLI::NonNegativeNumber);
  fig3_cmd->add_option("--zeta2-min", fig3.zeta2_min)->check(CLI::PositiveNumber);
  fig3_cmd->add_option("--zeta2-max", fig3.zeta2_max)->check(CLI::PositiveNumber);
  fig3_cmd->add_option("--step", fig3.step)->check(CLI::PositiveNumber);
  fig3_cmd->add_option("--alpha2", fig3.alpha2)->check(CLI::PositiveNumber);
  fig3_cmd->add_option("--xi-max", fig3.xi_max)->check(CLI::PositiveNumber);
  fig3_cmd->add_option("--out", out_path);
  add_common_flags(fig3_cmd, fig3.common, convention_name);

  CommonConfig point_common;
  SpecFlags vis_spec;
  double vis_zeta2 = 2.0;
  double vis_gamma_t = 1.0;
  int vis_n = 0;
  bool vis_oracle = false;
  auto* vis_cmd = app.add_subcommand("visibility", "Visibility at one point");
  add_spec_flags(vis_cmd, vis_spec);
  auto* zeta2_opt = vis_cmd->add_option("--zeta2", vis_zeta2)->check(CLI::NonNegativeNumber);
  vis_cmd->add_option("--alpha2", vis_zeta2, "alias of --zeta2")
      ->check(CLI::NonNegativeNumber)
      ->excludes(zeta2_opt);
  vis_cmd->add_option("--gamma-t", vis_gamma_t)->check(CLI::NonNegativeNumber);
  vis_cmd->add_option("--n", vis_n)->check(CLI::NonNegativeNumber);
  vis_cmd->add_flag("--oracle", vis_oracle, "use Kraus evolution instead of the series");
  add_common_flags(vis_cmd, point_common, convention_name);

  SpecFlags sep_spec;
  double sep_zeta = std::sqrt(2.0);
  auto* sep_cmd = app.add_subcommand("separation", "Separation d of one f-coherent state");
  add_spec_flags(sep_cmd, sep_spec);
  auto* zeta_opt = sep_cmd->add_option("--zeta", sep_zeta, "zeta (signed)");
  sep_cmd->add_option_function<double>(
             "--zeta2", [&](const double& z2) { sep_zeta = std::sqrt(z2); }, "zeta^2")
      ->check(CLI::NonNegativeNumber)
      ->excludes(zeta_opt);
  add_common_flags(sep_cmd, point_common, convention_name);

  double cal_zeta2 = 2.0;
  double cal_alpha2 = 2.0;
  double cal_xi_max = 1.0;
  double cal_step = 1e-3;
  auto* cal_cmd = app.add_subcommand("calibrate", "xi giving the undeformed separation");
  cal_cmd->add_option("--zeta2", cal_zeta2)->check(CLI::PositiveNumber);
  cal_cmd->add_option("--alpha2", cal_alpha2, "target d = 2 sqrt(alpha2)")
      ->check(CLI::PositiveNumber);
  cal_cmd->add_option("--xi-max", cal_xi_max)->check(CLI::PositiveNumber);
  cal_cmd->add_option("--step", cal_step, "coarse scan step")->check(CLI::PositiveNumber);
  add_common_flags(cal_cmd, point_common, convention_name);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: UsageError: " << e.what() << '\n';
    return kUsageError;
  }

  const FactorialConvention convention = *parse_convention(convention_name);
  fig1.common.convention = fig2.common.convention = fig3.common.convention = convention;
  point_common.convention = convention;

  try {
    if (fig1_cmd->parsed()) {
      if (!(fig1.q_min < fig1.q_max) || !(fig1.xi_min < fig1.xi_max)) {
        err << "error: UsageError: grid minimum must be below maximum\n";
        return kUsageError;
      }
      emit_table(make_fig1(fig1), out_path, out);
    } else if (fig2_cmd->parsed()) {
      emit_table(make_fig2(fig2), out_path, out);
    } else if (fig3_cmd->parsed()) {
      if (!(fig3.zeta2_min < fig3.zeta2_max)) {
        err << "error: UsageError: --zeta2-min must be below --zeta2-max\n";
        return kUsageError;
      }
      emit_table(make_fig3(fig3), out_path, out);
    } else if (vis_cmd->parsed()) {
      const DeformationSpec spec = vis_spec.build(convention);
      const double zeta = std::sqrt(vis_zeta2);
      const double eta = ChannelParams::from_gamma_t(vis_gamma_t).eta();
      const double value =
          vis_oracle ? visibility_numeric(spec, zeta, vis_n, eta, point_common.dim,
                                          truncation_for(point_common))
                           .value
                     : visibility_deformed(spec, zeta, vis_n, eta);
      out << format_number(value) << '\n';
    } else if (sep_cmd->parsed()) {
      const DeformationSpec spec = sep_spec.build(convention);
      out << format_number(separation(spec, sep_zeta, truncation_for(point_common))) << '\n';
    } else if (cal_cmd->parsed()) {
      CalibrationOptions options;
      options.convention = convention;
      options.truncation = truncation_for(point_common);
      options.coarse_step = cal_step;
      out << format_number(calibrate_xi(std::sqrt(cal_zeta2), 2.0 * std::sqrt(cal_alpha2),
                                        cal_xi_max, options))
          << '\n';
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::exception& e) {
    err << "error: IoError: " << e.what() << '\n';
    return kDomainFailure;
  }
  return kSuccess;
}

}  // namespace fdcat::cli
