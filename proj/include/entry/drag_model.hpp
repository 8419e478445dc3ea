#pragma once

namespace entry {

/// Instantaneous quantities the drag dynamics depend on.
struct DragKinematics {
  double d = 0.0;      // drag acceleration, m/s^2
  double v = 0.0;      // m/s
  double gamma = 0.0;  // rad
  double g = 0.0;      // m/s^2
  double r = 0.0;      // m
  double l = 0.0;      // lift acceleration, m/s^2
  double c = 0.0;      // relative drag-coefficient rate, 1/s
  double c_dot = 0.0;  // 1/s^2
};

/// Nominal drag rate: Ddot = p(D, t) when the model is exact.
double p_term(const DragKinematics& k, double hs);

/// Drag acceleration split into the drift part f and the control gain g0:
/// Dddot = f + g0 * cos(sigma).
struct DragAccelTerms {
  double f = 0.0;
  double g0 = 0.0;
};

DragAccelTerms f_g0_terms(const DragKinematics& k, double hs);

/// |g0| below this floor cannot be inverted by the guidance law.
inline constexpr double kG0Floor = 1e-8;

/// Throws g0-singular when |g0| is below the floor (or not finite).
void require_invertible(double g0, double floor = kG0Floor);

}  // namespace entry
