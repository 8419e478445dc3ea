#pragma once

#include <cstdint>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "entry/monte_carlo.hpp"
#include "entry/reference.hpp"
#include "entry/sim.hpp"
#include "entry/verify.hpp"

namespace entry {

struct ReferenceSettings {
  BankSchedule bank;  // knots in (m/s, rad)
  double dt = 0.01;   // s
};

struct MonteCarloSettings {
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  double observer_eps = 0.425;  // s, replaces observer.eps for campaign runs
  DispersionRanges ranges;
};

/// Everything a CLI invocation needs. Angles are degrees in the file, radians here.
struct AppConfig {
  Scenario scenario;
  GuidanceGains guidance;
  ObserverGains observer;
  double dt = 0.01;
  DispersionSet dispersion;
  ReferenceSettings reference;
  std::optional<double> target_downrange_km;  // unset: taken from the reference run
  std::optional<double> target_altitude_km;
  MonteCarloSettings monte_carlo;
  VxMonitorConfig monitor;

  /// Runs every module-level check (ranges, Hurwitz/Routh, dt bound) without
  /// simulating anything. Throws invalid-config or invalid-dispersion.
  void validate() const;
};

/// The default configuration as a JSON document; also the schema for overrides.
nlohmann::json default_config_json();

nlohmann::json to_json(const AppConfig& cfg);

/// Strict conversion: unknown keys and wrong types raise invalid-config.
AppConfig config_from_json(const nlohmann::json& doc);

/// Applies `key.path=value` overrides to a document. The value is parsed as JSON when
/// possible and taken as a string otherwise; the path must already exist.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Defaults, then the file (JSON, comments allowed; empty path skips it), then the
/// overrides in order. The result is validated.
AppConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Simulation setup for one run. `campaign` selects the Monte Carlo observer eps.
SimConfig make_sim_config(const AppConfig& cfg, std::shared_ptr<const ReferenceProfile> reference,
                          bool campaign = false);

/// Targets from the config, falling back to the given terminal state for unset fields.
Targets resolve_targets(const AppConfig& cfg, const Targets& fallback);

}  // namespace entry
