#include "entry/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "entry/config.hpp"
#include "entry/error.hpp"
#include "entry/io.hpp"
#include "entry/monte_carlo.hpp"
#include "entry/reference.hpp"
#include "entry/verify.hpp"

namespace entry {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string config;
  std::vector<std::string> overrides;
  std::string out = "out";
  std::string reference;
};

struct LoadedReference {
  std::shared_ptr<const ReferenceProfile> profile;
  std::optional<ReferenceRun> run;  // absent when read from a file
};

// Thrown after a validation problem has already been reported.
struct ValidationFailure {
  std::string message;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_reference) {
  cmd->add_option("-c,--config", opts.config, "JSON scenario file (comments allowed)");
  cmd->add_option("-s,--set", opts.overrides, "Override a config value, e.g. guidance.eps0=5")
      ->type_name("KEY=VALUE");
  cmd->add_option("-o,--out", opts.out, "Output directory")->capture_default_str();
  if (with_reference) {
    cmd->add_option("-r,--reference", opts.reference, "Reference profile CSV instead of generating one");
  }
}

AppConfig load(const CommonOptions& opts) {
  try {
    return load_config(opts.config, opts.overrides);
  } catch (const Error& e) {
    throw ValidationFailure{e.what()};
  }
}

std::string out_path(const CommonOptions& opts, const std::string& name) {
  fs::create_directories(opts.out);
  return (fs::path(opts.out) / name).string();
}

LoadedReference obtain_reference(const AppConfig& cfg, const CommonOptions& opts, std::ostream& err) {
  LoadedReference ref;
  if (!opts.reference.empty()) {
    std::ifstream in(opts.reference);
    if (!in) throw ValidationFailure{"cannot open reference file '" + opts.reference + "'"};
    ref.profile = std::make_shared<ReferenceProfile>(read_reference_csv(in));
    if (!cfg.target_downrange_km || !cfg.target_altitude_km) {
      err << "note: reference read from file; unset targets use " << Targets{}.downrange_km << " km / "
          << Targets{}.altitude_km << " km\n";
    }
    return ref;
  }
  ref.run = generate_reference(cfg.scenario, cfg.reference.bank, cfg.reference.dt);
  ref.profile = std::make_shared<ReferenceProfile>(ref.run->profile);
  return ref;
}

Targets targets_for(const AppConfig& cfg, const LoadedReference& ref) {
  if (!ref.run) return resolve_targets(cfg, Targets{});
  const double r0 = cfg.scenario.planet.r0;
  return resolve_targets(cfg, {std::abs(ref.run->terminal.s) / 1e3, (ref.run->terminal.r - r0) / 1e3});
}

template <class Get>
std::vector<double> column(const TrajectoryLog& log, Get get) {
  std::vector<double> out;
  out.reserve(log.records.size());
  for (const auto& r : log.records) out.push_back(get(r));
  return out;
}

void write_plots(const CommonOptions& opts, const TrajectoryLog& log, double r0) {
  const auto t = column(log, [](const LogRecord& r) { return r.t; });
  auto plot = [&](const std::string& file, Plot p) { write_file(out_path(opts, file), render_svg(p)); };

  plot("drag.svg", {"Drag acceleration", "time (s)", "D (m/s^2)",
                    {{"D", t, column(log, [](const LogRecord& r) { return r.drag; }), "#1f77b4"},
                     {"D*", t, column(log, [](const LogRecord& r) { return r.ref.d_star; }), "#d62728", true}}});
  plot("velocity.svg", {"Velocity", "time (s)", "V (m/s)",
                        {{"V", t, column(log, [](const LogRecord& r) { return r.state.v; })}}});
  plot("altitude.svg",
       {"Altitude", "time (s)", "h (km)",
        {{"h", t, column(log, [r0](const LogRecord& r) { return (r.state.r - r0) / 1e3; })}}});
  plot("bank.svg", {"Bank angle", "time (s)", "sigma (deg)",
                    {{"sigma", t, column(log, [](const LogRecord& r) { return rad2deg(r.sigma); })}}});
  plot("estimate_error.svg",
       {"Observer estimate errors", "time (s)", "error",
        {{"xhat1 - x1 (m/s^2)", t, column(log, [](const LogRecord& r) { return r.xhat1 - r.x1; })},
         {"xhat2 - x2 (m/s^3)", t, column(log, [](const LogRecord& r) { return r.xhat2 - r.x2; }), "#2ca02c"}}});
  plot("nussbaum.svg", {"Nussbaum argument", "time (s)", "chi",
                        {{"chi", t, column(log, [](const LogRecord& r) { return r.chi_n; })}}});
}

int cmd_reference(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const AppConfig cfg = load(opts);
  const LoadedReference ref = obtain_reference(cfg, opts, err);
  {
    std::ofstream csv(out_path(opts, "reference.csv"));
    write_reference_csv(csv, *ref.profile);
  }
  const auto& run = *ref.run;
  const double r0 = cfg.scenario.planet.r0;
  nlohmann::json doc = {{"reason", to_string(run.reason)},
                        {"t_final", run.t_final},
                        {"velocity", run.terminal.v},
                        {"altitude_km", (run.terminal.r - r0) / 1e3},
                        {"downrange_km", std::abs(run.terminal.s) / 1e3},
                        {"peak_drag", ref.profile->peak_drag()},
                        {"samples", ref.profile->samples().size()}};
  write_file(out_path(opts, "reference.json"), doc.dump(2) + "\n");

  std::vector<double> t;
  std::vector<double> d;
  for (const auto& s : ref.profile->samples()) {
    t.push_back(s.t);
    d.push_back(s.d_star);
  }
  write_file(out_path(opts, "reference_drag.svg"),
             render_svg({"Reference drag profile", "time (s)", "D* (m/s^2)", {{"D*", t, d}}}));
  out << "reference: " << ref.profile->samples().size() << " samples, t_f = " << run.t_final
      << " s, downrange " << doc["downrange_km"].get<double>() << " km, altitude "
      << doc["altitude_km"].get<double>() << " km -> " << opts.out << "\n";
  return 0;
}

int cmd_nominal(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const AppConfig cfg = load(opts);
  const LoadedReference ref = obtain_reference(cfg, opts, err);
  const Targets targets = targets_for(cfg, ref);
  const TrajectoryLog log = run_trajectory(make_sim_config(cfg, ref.profile));

  const auto residuals = residual_samples(log);
  {
    std::ofstream csv(out_path(opts, "trajectory.csv"));
    write_trajectory_csv(csv, log, residuals);
  }
  write_file(out_path(opts, "terminal.json"), terminal_json(log, targets));
  if (residuals.size() >= 3) {
    const ResidualFit fit = fit_residual_envelope(residuals);
    nlohmann::json doc = {{"l0", fit.l0},
                          {"l1", fit.l1},
                          {"d", fit.d},
                          {"violation_fraction", fit.violation_fraction},
                          {"safety_factor", kEnvelopeSafety},
                          {"samples", fit.samples}};
    write_file(out_path(opts, "residual_fit.json"), doc.dump(2) + "\n");
  }
  write_plots(opts, log, cfg.scenario.planet.r0);

  const ErrorMetrics e = error_metrics(log.terminal, targets);
  out << "nominal: " << to_string(log.terminal.reason) << " event at t = " << log.terminal.t
      << " s, downrange " << log.terminal.downrange_km << " km (error " << e.downrange_km << "), altitude "
      << log.terminal.altitude_km << " km (error " << e.altitude_km << ") -> " << opts.out << "\n";
  return 0;
}

int cmd_montecarlo(const CommonOptions& opts, std::optional<std::size_t> runs, std::optional<std::uint64_t> seed,
                   bool baseline, std::ostream& out, std::ostream& err) {
  const AppConfig cfg = load(opts);
  const LoadedReference ref = obtain_reference(cfg, opts, err);

  CampaignSpec spec;
  spec.base = make_sim_config(cfg, ref.profile, true);
  spec.targets = targets_for(cfg, ref);
  spec.ranges = cfg.monte_carlo.ranges;
  spec.runs = runs.value_or(cfg.monte_carlo.runs);
  spec.master_seed = seed.value_or(cfg.monte_carlo.seed);
  if (spec.runs < 1) throw ValidationFailure{"--runs must be at least 1"};

  const McReport report = run_campaign(spec);
  std::optional<McReport> base_report;
  if (baseline) {
    CampaignSpec b = spec;
    b.base.guidance.law = GuidanceLawKind::no_integral;
    base_report = run_campaign(b);
  }
  const McReport* bp = base_report ? &*base_report : nullptr;

  {
    std::ofstream csv(out_path(opts, "runs.csv"));
    write_runs_csv(csv, report);
  }
  if (bp != nullptr) {
    std::ofstream csv(out_path(opts, "baseline_runs.csv"));
    write_runs_csv(csv, *bp);
  }
  write_file(out_path(opts, "summary.json"), summary_json(report, bp));
  const std::string table = summary_table(report, bp);
  write_file(out_path(opts, "summary.txt"), table);

  Plot scatter{"Terminal errors", "downrange error (km)", "altitude error (km)", {}};
  auto add_series = [&scatter](const McReport& r, const char* color) {
    PlotSeries s{to_string(r.law), {}, {}, color, false, true};
    for (const auto& run : r.runs) {
      if (!run.ok) continue;
      s.x.push_back(run.downrange_error_km);
      s.y.push_back(run.altitude_error_km);
    }
    scatter.series.push_back(std::move(s));
  };
  add_series(report, "#1f77b4");
  if (bp != nullptr) add_series(*bp, "#d62728");
  write_file(out_path(opts, "errors.svg"), render_svg(scatter));

  out << table;
  out << report.runs.size() - report.failures << "/" << report.runs.size() << " runs succeeded, "
      << report.velocity_terminations << " ended on the velocity event\n";
  if (report.failed() || (bp != nullptr && bp->failed())) {
    err << "campaign failed: more than 1% of runs failed (see summary.json)\n";
    return 2;
  }
  return 0;
}

int cmd_verify(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const AppConfig cfg = load(opts);
  const LoadedReference ref = obtain_reference(cfg, opts, err);
  const VerifyReport report = run_verify_suite(make_sim_config(cfg, ref.profile), cfg.monitor);
  const std::string doc = report.to_json();
  write_file(out_path(opts, "verify.json"), doc);
  out << doc;
  return report.passed() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Drag-tracking entry guidance: reference generation, closed-loop runs, "
               "Monte Carlo campaigns and verification."};
  app.name("entry_guidance");
  app.require_subcommand(1, 1);

  CommonOptions opts;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  bool baseline = false;

  auto* reference = app.add_subcommand("reference", "Generate the reference drag profile");
  add_common(reference, opts, false);
  auto* nominal = app.add_subcommand("nominal", "Closed-loop nominal run with CSV, JSON and SVG output");
  add_common(nominal, opts, true);
  auto* mc = app.add_subcommand("montecarlo", "Dispersed Monte Carlo campaign");
  add_common(mc, opts, true);
  mc->add_option("-n,--runs", runs, "Number of runs (default from config)");
  mc->add_option("--seed", seed, "Master seed (default from config)");
  mc->add_flag("--baseline", baseline, "Also run the no-integral comparison law");
  auto* verify = app.add_subcommand("verify", "Gain, Nussbaum and boundedness checks");
  add_common(verify, opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (reference->parsed()) return cmd_reference(opts, out, err);
    if (nominal->parsed()) return cmd_nominal(opts, out, err);
    if (mc->parsed()) return cmd_montecarlo(opts, runs, seed, baseline, out, err);
    return cmd_verify(opts, out, err);
  } catch (const ValidationFailure& v) {
    err << "validation failed: " << v.message << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace entry
