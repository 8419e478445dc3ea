#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "entry/dispersion.hpp"
#include "entry/sim.hpp"

namespace entry {

/// Half-widths of the symmetric uniform dispersion ranges.
struct DispersionRanges {
  double d_m = 0.05;
  double d_rho = 0.20;
  double d_cl = 0.30;
  double d_cd = 0.30;

  void validate() const;
};

/// Draws each fraction independently and uniformly from [-range, range], in the
/// order m, rho, cl, cd. Uniforms use the top 53 bits of each 64-bit draw.
DispersionSet sample_dispersions(std::mt19937_64& rng, const DispersionRanges& ranges = {});

/// Seed for run `index`: splitmix64(master + (index + 1) * golden-ratio increment).
/// Depends only on (master, index), so adding runs never changes earlier ones.
std::uint64_t run_seed(std::uint64_t master, std::size_t index);

struct Statistics {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, n - 1 denominator; 0 for n = 1
  std::size_t n = 0;
};

/// Throws empty-input for an empty span.
Statistics statistics(std::span<const double> values);

struct RunRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  DispersionSet dispersion;
  bool ok = false;
  std::string failure;  // error text when !ok
  TerminationReason reason = TerminationReason::velocity;
  double t_final = 0.0;
  double downrange_error_km = 0.0;
  double altitude_error_km = 0.0;
  double max_abs_chi = 0.0;
  double sigma_min = 0.0;  // rad
  double sigma_max = 0.0;  // rad
};

struct McReport {
  GuidanceLawKind law = GuidanceLawKind::proposed;
  std::uint64_t master_seed = 0;
  Targets targets;
  std::vector<RunRecord> runs;  // ordered by index
  std::size_t failures = 0;
  std::size_t velocity_terminations = 0;
  Statistics downrange;  // successful runs only
  Statistics altitude;

  double failure_fraction() const;
  /// More than 1% of runs failed.
  bool failed() const { return failure_fraction() > 0.01; }
};

struct CampaignSpec {
  SimConfig base;  // dispersion field is overwritten per run; logs are never kept
  Targets targets;
  DispersionRanges ranges;
  std::size_t runs = 1000;
  std::uint64_t master_seed = 1;

  void validate() const;
};

/// Runs the campaign across OpenMP threads. Each run is keyed by its index, so the
/// report is bit-identical to run_campaign_serial for any thread count.
McReport run_campaign(const CampaignSpec& spec);

/// Single-threaded reference implementation of run_campaign.
McReport run_campaign_serial(const CampaignSpec& spec);

/// Executes one campaign member; never throws for simulation failures.
RunRecord run_member(const CampaignSpec& spec, std::size_t index);

/// Per-run rows: index, seed, dispersions, status, termination and errors.
void write_runs_csv(std::ostream& out, const McReport& report);

/// Summary statistics and failure list as a JSON document.
std::string summary_json(const McReport& report, const McReport* baseline = nullptr);

/// Min / max / average / standard deviation rows for downrange and altitude error,
/// with a second column per metric when a baseline report is given.
std::string summary_table(const McReport& report, const McReport* baseline = nullptr);

}  // namespace entry
