#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "entry/error.hpp"

namespace entry {

template <std::size_t N>
using StateVector = std::array<double, N>;

namespace detail {

template <std::size_t N>
StateVector<N> axpy(const StateVector<N>& y, double a, const StateVector<N>& k) {
  StateVector<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + a * k[i];
  return out;
}

}  // namespace detail

/// Classical fourth-order Runge-Kutta step of the autonomous-or-not system y' = f(t, y).
/// Throws nonfinite-state if the result contains NaN or Inf.
template <std::size_t N, class Deriv>
StateVector<N> rk4_step(const StateVector<N>& y, double t, double dt, Deriv&& f) {
  if (!(dt > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "rk4 step must be positive");
  }
  const StateVector<N> k1 = f(t, y);
  const StateVector<N> k2 = f(t + 0.5 * dt, detail::axpy(y, 0.5 * dt, k1));
  const StateVector<N> k3 = f(t + 0.5 * dt, detail::axpy(y, 0.5 * dt, k2));
  const StateVector<N> k4 = f(t + dt, detail::axpy(y, dt, k3));

  StateVector<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(out[i])) {
      throw Error(ErrorKind::nonfinite_state,
                  "component " + std::to_string(i) + " not finite at t=" + std::to_string(t + dt));
    }
  }
  return out;
}

/// Bisection on the length of a single RK4 step taken from (t, y): returns the
/// smallest h in (0, dt] (to within tol) with event(y(h)) <= 0. Assumes
/// event(y) > 0 and event(y(dt)) <= 0.
template <std::size_t N, class Deriv, class Event>
double refine_event(const StateVector<N>& y, double t, double dt, Deriv&& f, Event&& event,
                    double tol) {
  double lo = 0.0;
  double hi = dt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (event(rk4_step(y, t, mid, f)) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace entry
