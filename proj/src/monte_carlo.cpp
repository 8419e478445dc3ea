#include "entry/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "entry/error.hpp"

namespace entry {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double symmetric(std::mt19937_64& rng, double half_width) {
  return half_width * (2.0 * unit_uniform(rng) - 1.0);
}

void finalize(McReport& report) {
  std::vector<double> down;
  std::vector<double> alt;
  report.failures = 0;
  report.velocity_terminations = 0;
  for (const auto& r : report.runs) {
    if (!r.ok) {
      ++report.failures;
      continue;
    }
    if (r.reason == TerminationReason::velocity) ++report.velocity_terminations;
    down.push_back(r.downrange_error_km);
    alt.push_back(r.altitude_error_km);
  }
  if (!down.empty()) {
    report.downrange = statistics(down);
    report.altitude = statistics(alt);
  }
}

McReport empty_report(const CampaignSpec& spec) {
  spec.validate();
  McReport report;
  report.law = spec.base.guidance.law;
  report.master_seed = spec.master_seed;
  report.targets = spec.targets;
  report.runs.resize(spec.runs);
  return report;
}

nlohmann::json stats_json(const Statistics& s) {
  return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"std", s.std}, {"n", s.n}};
}

nlohmann::json report_json(const McReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& run : r.runs) {
    if (!run.ok) failures.push_back({{"index", run.index}, {"seed", run.seed}, {"reason", run.failure}});
  }
  return {{"law", to_string(r.law)},
          {"master_seed", r.master_seed},
          {"runs", r.runs.size()},
          {"successful", r.runs.size() - r.failures},
          {"velocity_terminations", r.velocity_terminations},
          {"failure_fraction", r.failure_fraction()},
          {"campaign_failed", r.failed()},
          {"targets", {{"downrange_km", r.targets.downrange_km}, {"altitude_km", r.targets.altitude_km}}},
          {"downrange_error_km", stats_json(r.downrange)},
          {"altitude_error_km", stats_json(r.altitude)},
          {"failures", failures}};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

void DispersionRanges::validate() const {
  for (double w : {d_m, d_rho, d_cl, d_cd}) {
    if (!(w >= 0.0) || !(w < 1.0)) {
      throw Error(ErrorKind::invalid_dispersion, "dispersion half-widths must lie in [0, 1)");
    }
  }
}

DispersionSet sample_dispersions(std::mt19937_64& rng, const DispersionRanges& ranges) {
  DispersionSet d;
  d.d_m = symmetric(rng, ranges.d_m);
  d.d_rho = symmetric(rng, ranges.d_rho);
  d.d_cl = symmetric(rng, ranges.d_cl);
  d.d_cd = symmetric(rng, ranges.d_cd);
  return d;
}

std::uint64_t run_seed(std::uint64_t master, std::size_t index) {
  return splitmix64(master + (static_cast<std::uint64_t>(index) + 1) * kGolden);
}

Statistics statistics(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::empty_input, "statistics of an empty sample");
  Statistics s;
  s.n = values.size();
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

double McReport::failure_fraction() const {
  return runs.empty() ? 0.0 : static_cast<double>(failures) / static_cast<double>(runs.size());
}

void CampaignSpec::validate() const {
  if (runs < 1) throw Error(ErrorKind::invalid_argument, "campaign needs at least one run");
  ranges.validate();
  base.validate();
}

RunRecord run_member(const CampaignSpec& spec, std::size_t index) {
  RunRecord rec;
  rec.index = index;
  rec.seed = run_seed(spec.master_seed, index);
  std::mt19937_64 rng(rec.seed);
  rec.dispersion = sample_dispersions(rng, spec.ranges);

  SimConfig cfg = spec.base;
  cfg.dispersion = rec.dispersion;
  cfg.keep_log = false;
  try {
    const TrajectoryLog log = run_trajectory(cfg);
    const ErrorMetrics err = error_metrics(log.terminal, spec.targets);
    rec.ok = true;
    rec.reason = log.terminal.reason;
    rec.t_final = log.terminal.t;
    rec.downrange_error_km = err.downrange_km;
    rec.altitude_error_km = err.altitude_km;
    rec.max_abs_chi = log.stats.max_abs_chi;
    rec.sigma_min = log.stats.sigma_min;
    rec.sigma_max = log.stats.sigma_max;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.failure = e.what();
  }
  return rec;
}

McReport run_campaign(const CampaignSpec& spec) {
  McReport report = empty_report(spec);
  const auto n = static_cast<long long>(spec.runs);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < n; ++i) {
    report.runs[static_cast<std::size_t>(i)] = run_member(spec, static_cast<std::size_t>(i));
  }
  finalize(report);
  return report;
}

McReport run_campaign_serial(const CampaignSpec& spec) {
  McReport report = empty_report(spec);
  for (std::size_t i = 0; i < spec.runs; ++i) report.runs[i] = run_member(spec, i);
  finalize(report);
  return report;
}

void write_runs_csv(std::ostream& out, const McReport& report) {
  out << "index,seed,d_m,d_rho,d_cl,d_cd,status,termination,t_final,downrange_error_km,"
         "altitude_error_km,max_abs_chi,sigma_min_deg,sigma_max_deg,failure\n";
  char buf[512];
  for (const auto& r : report.runs) {
    std::snprintf(buf, sizeof buf, "%zu,%llu,%.17g,%.17g,%.17g,%.17g,%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,",
                  r.index, static_cast<unsigned long long>(r.seed), r.dispersion.d_m,
                  r.dispersion.d_rho, r.dispersion.d_cl, r.dispersion.d_cd, r.ok ? "ok" : "failed",
                  r.ok ? to_string(r.reason) : "", r.t_final, r.downrange_error_km,
                  r.altitude_error_km, r.max_abs_chi, rad2deg(r.sigma_min), rad2deg(r.sigma_max));
    out << buf;
    // Failure text may contain commas.
    std::string text = r.failure;
    std::replace(text.begin(), text.end(), '"', '\'');
    out << (text.empty() ? "" : "\"" + text + "\"") << '\n';
  }
}

std::string summary_json(const McReport& report, const McReport* baseline) {
  nlohmann::json doc;
  doc["std_denominator"] = "n-1";
  doc["proposed"] = report_json(report);
  if (baseline != nullptr) doc["baseline"] = report_json(*baseline);
  return doc.dump(2) + "\n";
}

std::string summary_table(const McReport& report, const McReport* baseline) {
  std::ostringstream os;
  const bool two = baseline != nullptr;
  const std::string l1 = to_string(report.law);
  const std::string l2 = two ? to_string(baseline->law) : "";

  auto row = [&](const char* label, double Statistics::*field) {
    char buf[256];
    if (two) {
      std::snprintf(buf, sizeof buf, "%-20s | %12s | %12s | %12s | %12s\n", label,
                    fmt(report.downrange.*field).c_str(), fmt(baseline->downrange.*field).c_str(),
                    fmt(report.altitude.*field).c_str(), fmt(baseline->altitude.*field).c_str());
    } else {
      std::snprintf(buf, sizeof buf, "%-20s | %12s | %12s\n", label,
                    fmt(report.downrange.*field).c_str(), fmt(report.altitude.*field).c_str());
    }
    os << buf;
  };

  char buf[256];
  if (two) {
    std::snprintf(buf, sizeof buf, "%-20s | %27s | %27s\n", "", "Downrange Error (km)", "Altitude Error (km)");
    os << buf;
    std::snprintf(buf, sizeof buf, "%-20s | %12s | %12s | %12s | %12s\n", "", l1.c_str(), l2.c_str(),
                  l1.c_str(), l2.c_str());
  } else {
    std::snprintf(buf, sizeof buf, "%-20s | %12s | %12s\n", l1.c_str(), "Downrange (km)", "Altitude (km)");
  }
  os << buf;
  os << std::string(two ? 83 : 51, '-') << '\n';
  row("Minimum", &Statistics::min);
  row("Maximum", &Statistics::max);
  row("Average", &Statistics::mean);
  row("Standard deviation", &Statistics::std);
  return os.str();
}

}  // namespace entry
