#pragma once

#include <span>
#include <string>
#include <vector>

#include "entry/guidance.hpp"
#include "entry/observer.hpp"
#include "entry/sim.hpp"

namespace entry {

/// Routh test for s^3 + a1 s^2 + a2 s + a3.
inline bool routh_cubic(double a1, double a2, double a3) {
  return a1 > 0.0 && a2 > 0.0 && a3 > 0.0 && a1 * a2 > a3;
}

struct HurwitzReport {
  bool observer_ok = false;  // F0 = [[-h1, 1], [-h2, 0]]
  bool guidance_ok = false;  // A0, the companion of the alpha polynomial
  std::vector<std::string> reasons;

  bool ok() const { return observer_ok && guidance_ok; }
};

/// Never throws. With the no-integral law the guidance check is on s^2 + a1 s + a2.
HurwitzReport hurwitz_check(const ObserverGains& observer, const GuidanceGains& guidance);

struct NussbaumPoint {
  double s = 0.0;
  double mean_integral = 0.0;  // (1/s) int_0^s N(zeta) dzeta
  double error_estimate = 0.0;
};

inline constexpr double kNussbaumScanMax = 20.0;

/// Adaptive Gauss-Kronrod evaluation of the running mean of N. The integrand is scaled
/// by exp(-s^2) so it stays in range. Points must be positive, increasing and at most
/// kNussbaumScanMax (invalid-argument otherwise). Throws quadrature-failure if the
/// achieved error exceeds the tolerance.
std::vector<NussbaumPoint> nussbaum_property_scan(std::span<const double> s_points,
                                                  double rel_tol = 1e-10);

struct VxMonitorConfig {
  double lambda = 0.1;    // 1/s
  double rho_min = 1e-6;  // bounds the hypothesis asks for; reported against, not enforced
  double rho_max = 1.0;
  double ceiling = 1e6;

  void validate() const;
};

struct VxMonitorResult {
  std::vector<double> v;  // V(0, t_j) at every sample
  double max_abs = 0.0;
  bool bounded = false;   // max_abs below the ceiling
  double rho_min_observed = 0.0;
  double rho_max_observed = 0.0;
  bool rho_within_bounds = false;
};

/// V(0, t) = int_0^t (rho N(chi) - 1) chi' e^{lambda (tau - t)} dtau, by a trapezoid rule
/// in chi carried forward with the exponential weight. Throws misaligned-histories when
/// the three series differ in length or time does not increase.
VxMonitorResult vx_monitor(std::span<const double> t, std::span<const double> chi,
                           std::span<const double> rho, const VxMonitorConfig& cfg = {});

/// Closed-loop form with rho = dg/du = sech^2(u) taken from the log.
VxMonitorResult vx_monitor(const TrajectoryLog& log, const VxMonitorConfig& cfg = {});

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
  std::string to_json() const;
};

/// Gain validity, Nussbaum properties and, when a reference is configured, the
/// closed-loop boundedness monitor on the nominal run.
VerifyReport run_verify_suite(const SimConfig& nominal, const VxMonitorConfig& vx = {});

}  // namespace entry
