#pragma once

#include <memory>
#include <vector>

#include "entry/dispersion.hpp"
#include "entry/guidance.hpp"
#include "entry/reference.hpp"
#include "entry/scenario.hpp"

namespace entry {

struct SimConfig {
  Scenario scenario;
  GuidanceGains guidance;
  ObserverGains observer;
  DispersionSet dispersion;
  std::shared_ptr<const ReferenceProfile> reference;
  double dt = 0.01;       // s
  bool keep_log = true;   // false keeps only the terminal summary and run statistics

  /// Gains, dt <= min(eps, eps0, tau)/10, dispersion sanity and a non-empty reference.
  void validate() const;
};

/// One logged integration step. Guidance quantities are those evaluated at the record's state.
struct LogRecord {
  double t = 0.0;
  VehicleState state;
  double drag = 0.0;
  double lift = 0.0;
  ReferenceTriple ref;
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;  // analytic drag-error rate p - D*'
  double xhat1 = 0.0;
  double xhat2 = 0.0;
  double u = 0.0;
  double chi_n = 0.0;
  double chi_n_dot = 0.0;
  double nussbaum = 1.0;
  double sigma = 0.0;
  double gstar = 0.0;
  double gstar_unclamped = 0.0;
  bool clamped = false;
  double G = 0.0;
  double ubar = 0.0;
  double f = 0.0;
  double g0 = 0.0;
  double p = 0.0;
  double plant_control = 0.0;  // cos(sigma) actually applied to the plant
};

struct TerminalSummary {
  TerminationReason reason = TerminationReason::velocity;
  double t = 0.0;
  VehicleState state;
  double downrange_km = 0.0;  // |s|, distance travelled
  double altitude_km = 0.0;
};

struct RunStats {
  double sigma_min = 0.0;  // rad, over every recorded step
  double sigma_max = 0.0;
  double max_abs_chi = 0.0;
  std::size_t steps = 0;
};

struct TrajectoryLog {
  std::vector<LogRecord> records;
  TerminalSummary terminal;
  RunStats stats;
};

/// Closed-loop run from the entry interface to the first terminal event, with the
/// terminal crossing refined by bisection. Throws timeout, nonfinite-state,
/// nonfinite-control or g0-singular.
TrajectoryLog run_trajectory(const SimConfig& config);

/// How a held control u reaches the plant in an open-loop run.
enum class PlantInput { saturated, smooth };

/// Open-loop run with u held constant (plant sees sat(u) or tanh(u)); the observer and
/// the drag-error integral still run so their behaviour can be checked in isolation.
TrajectoryLog run_open_loop(const SimConfig& config, double u_hold, PlantInput input);

struct Targets {
  double downrange_km = 723.32;
  double altitude_km = 10.0;
};

struct ErrorMetrics {
  double downrange_km = 0.0;  // travelled - target
  double altitude_km = 0.0;   // terminal - target
};

ErrorMetrics error_metrics(const TerminalSummary& terminal, const Targets& targets);

struct MonitorSample {
  double t = 0.0;
  double delta_s_resid = 0.0;  // measured D'' - (f + g0 tanh(u)), m/s^4
  double x0_abs = 0.0;
  double x1_abs = 0.0;
};

/// Residual of the design model against the logged drag, with D'' from a 5-point
/// second-difference stencil. Only uniformly spaced records are used.
std::vector<MonitorSample> residual_samples(const TrajectoryLog& log);

struct ResidualFit {
  double l0 = 0.0;
  double l1 = 0.0;
  double d = 0.0;
  double violation_fraction = 0.0;  // samples above 1.1 x the fitted envelope
  std::size_t samples = 0;
};

inline constexpr double kEnvelopeSafety = 1.1;

/// Non-negative least-squares fit of |resid| ~ l0|x0| + l1|x1| + d.
/// Throws insufficient-samples when fewer than 3 residual samples exist.
ResidualFit fit_residual_envelope(const std::vector<MonitorSample>& samples);

inline ResidualFit residual_monitor(const TrajectoryLog& log) {
  return fit_residual_envelope(residual_samples(log));
}

}  // namespace entry
