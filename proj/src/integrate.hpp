#pragma once

// Fixed-step driver shared by the reference generator and the closed-loop engine.
// Plant states occupy the first seven slots (r, phi, theta, v, gamma, chi, s).

#include <algorithm>

#include "entry/reference.hpp"
#include "entry/rk4.hpp"
#include "entry/scenario.hpp"

namespace entry::detail {

inline constexpr double kEventTolerance = 1e-6;  // s

template <std::size_t N>
void pack_vehicle(const VehicleState& x, StateVector<N>& y) {
  static_assert(N >= 7);
  y[0] = x.r;
  y[1] = x.phi;
  y[2] = x.theta;
  y[3] = x.v;
  y[4] = x.gamma;
  y[5] = x.chi;
  y[6] = x.s;
}

template <std::size_t N>
VehicleState unpack_vehicle(const StateVector<N>& y) {
  static_assert(N >= 7);
  return {y[0], y[1], y[2], y[3], y[4], y[5], y[6]};
}

template <std::size_t N>
struct TerminalHit {
  TerminationReason reason = TerminationReason::timeout;
  double t = 0.0;
  StateVector<N> y{};
};

/// Steps y' = f(t, y) from t = 0 until a terminal condition fires. record(t, y) is
/// called at t = 0, after each full step and at the refined terminal point.
template <std::size_t N, class Deriv, class Record>
TerminalHit<N> integrate_to_terminal(StateVector<N> y, double dt, const TerminalConditions& term,
                                     double r0, Deriv&& f, Record&& record) {
  auto velocity_event = [&](const StateVector<N>& s) { return s[3] - term.velocity; };
  auto altitude_event = [&](const StateVector<N>& s) { return s[0] - r0 - term.altitude_floor; };

  std::size_t n = 0;
  double t = 0.0;
  record(t, y);
  while (t < term.max_time) {
    StateVector<N> next = rk4_step(y, t, dt, f);
    const bool v_hit = velocity_event(next) <= 0.0;
    const bool h_hit = altitude_event(next) <= 0.0;
    if (v_hit || h_hit) {
      double hv = dt;
      double hh = dt;
      if (v_hit) hv = refine_event(y, t, dt, f, velocity_event, kEventTolerance);
      if (h_hit) hh = refine_event(y, t, dt, f, altitude_event, kEventTolerance);
      TerminalHit<N> hit;
      hit.reason = (v_hit && (!h_hit || hv <= hh)) ? TerminationReason::velocity
                                                    : TerminationReason::altitude;
      const double h = hit.reason == TerminationReason::velocity ? hv : hh;
      hit.y = h < dt ? rk4_step(y, t, h, f) : next;
      hit.t = t + h;
      record(hit.t, hit.y);
      return hit;
    }
    y = next;
    t = static_cast<double>(++n) * dt;
    record(t, y);
  }
  return {TerminationReason::timeout, t, y};
}

}  // namespace entry::detail
