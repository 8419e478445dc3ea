#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "entry/scenario.hpp"

namespace entry {

struct ReferenceSample {
  double t = 0.0;
  double d_star = 0.0;
  double d_star_dot = 0.0;
  double d_star_ddot = 0.0;
};

struct ReferenceTriple {
  double d_star = 0.0;
  double d_star_dot = 0.0;
  double d_star_ddot = 0.0;
};

/// Time-indexed reference drag profile. Immutable once built.
class ReferenceProfile {
 public:
  ReferenceProfile() = default;
  /// Throws invalid-argument unless times strictly increase and every d_star > 0.
  explicit ReferenceProfile(std::vector<ReferenceSample> samples);

  /// Cubic Hermite on d_star (slopes from d_star_dot), linear on the derivatives.
  /// Outside [t_begin, t_end] the nearest end sample is held.
  ReferenceTriple lookup(double t) const;

  std::span<const ReferenceSample> samples() const { return samples_; }
  bool empty() const { return samples_.empty(); }
  double t_begin() const;
  double t_end() const;
  double peak_drag() const;

 private:
  std::size_t interval(double t) const;

  std::vector<ReferenceSample> samples_;
  double uniform_dt_ = 0.0;
};

/// Bank angle as a function of velocity: piecewise linear over (v, sigma) knots,
/// held constant outside the table. A single knot is a constant schedule.
class BankSchedule {
 public:
  BankSchedule() = default;
  explicit BankSchedule(std::vector<std::pair<double, double>> knots);
  static BankSchedule constant(double sigma) { return BankSchedule({{0.0, sigma}}); }

  double at(double v) const;
  std::span<const std::pair<double, double>> knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_{{0.0, 50.0 * kPi / 180.0}};
};

enum class TerminationReason { velocity, altitude, timeout };

const char* to_string(TerminationReason reason);

struct ReferenceRun {
  ReferenceProfile profile;
  VehicleState terminal;
  double t_final = 0.0;
  TerminationReason reason = TerminationReason::velocity;
  std::vector<VehicleState> states;  // one per profile sample
};

/// Integrates the zero-dispersion vehicle under the open-loop bank schedule and records
/// D with its analytic first and second derivatives at every step.
/// Throws nominal-run-failed if no terminal condition is met within max_time.
ReferenceRun generate_reference(const Scenario& scenario, const BankSchedule& bank, double dt);

void write_reference_csv(std::ostream& out, const ReferenceProfile& profile);
ReferenceProfile read_reference_csv(std::istream& in);

}  // namespace entry
