#pragma once

#include <memory>

#include "entry/reference.hpp"
#include "entry/sim.hpp"

namespace fixtures {

/// Reference run of the default scenario at dt = 0.01 s, built once per process.
inline const entry::ReferenceRun& nominal_reference() {
  static const entry::ReferenceRun run =
      entry::generate_reference(entry::Scenario{}, entry::BankSchedule{}, 0.01);
  return run;
}

inline std::shared_ptr<const entry::ReferenceProfile> nominal_profile() {
  static const auto profile = std::make_shared<const entry::ReferenceProfile>(nominal_reference().profile);
  return profile;
}

inline entry::Targets reference_targets() {
  const auto& run = nominal_reference();
  return {std::abs(run.terminal.s) / 1e3, (run.terminal.r - entry::PlanetModel{}.r0) / 1e3};
}

inline entry::SimConfig nominal_config(double eps = 1.78) {
  entry::SimConfig cfg;
  cfg.reference = nominal_profile();
  cfg.observer.eps = eps;
  return cfg;
}

/// First time after which the virtual-control clamp never engages again, plus
/// `settle` seconds. Returns +inf when the clamp is active at the final record.
inline double steady_start(const entry::TrajectoryLog& log, double settle) {
  double release = 0.0;
  for (const auto& r : log.records) {
    if (r.clamped) release = r.t;
  }
  if (!log.records.empty() && log.records.back().clamped) return INFINITY;
  return release + settle;
}

}  // namespace fixtures
