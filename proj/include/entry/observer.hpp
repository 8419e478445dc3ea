#pragma once

namespace entry {

struct ObserverState {
  double xhat1 = 0.0;  // estimated drag error, m/s^2
  double xhat2 = 0.0;  // estimated drag-error rate, m/s^3
};

/// High-gain observer gains. The error matrix [[-h1, 1], [-h2, 0]] is Hurwitz iff h1, h2 > 0.
struct ObserverGains {
  double h1 = 2.0;
  double h2 = 1.0;
  double eps = 1.78;  // s

  bool hurwitz() const { return h1 > 0.0 && h2 > 0.0; }
  void validate() const;
};

struct ObserverRates {
  double xhat1_dot = 0.0;
  double xhat2_dot = 0.0;
};

/// x1_measured is the drag error D - D*, g_u the smooth control tanh(u).
ObserverRates observer_derivative(const ObserverState& obs, const ObserverGains& gains,
                                  double x1_measured, double f, double g0, double g_u,
                                  double d_star_ddot);

}  // namespace entry
