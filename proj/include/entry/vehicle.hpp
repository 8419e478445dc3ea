#pragma once

#include <cmath>

#include "entry/dispersion.hpp"

namespace entry {

/// 3-DOF point-mass state over a non-rotating planet. SI units, radians.
struct VehicleState {
  double r = 0.0;      // radial position
  double phi = 0.0;    // longitude
  double theta = 0.0;  // latitude
  double v = 0.0;      // velocity
  double gamma = 0.0;  // flight path angle
  double chi = 0.0;    // heading
  double s = 0.0;      // downrange

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

/// Default vehicle: ballistic coefficient 115 kg/m^2, L/D 0.18.
struct VehicleParams {
  double mass = 2651.325;
  double area = 15.9;
  double cl0 = 0.261;
  double cd0 = 1.45;
  double d_cl = 0.0;
  double d_cd = 0.0;
  double d_m = 0.0;

  double lift_to_drag() const { return cl0 / cd0; }
  double ballistic_coefficient() const { return mass / (area * cd0); }

  VehicleParams dispersed(const DispersionSet& disp) const {
    VehicleParams out = *this;
    out.d_cl = disp.d_cl;
    out.d_cd = disp.d_cd;
    out.d_m = disp.d_m;
    return out;
  }

  void validate() const;
};

struct AeroAccel {
  double lift = 0.0;  // m/s^2
  double drag = 0.0;  // m/s^2
};

/// cos/sin of the bank angle. The bank magnitude lives in [0, pi], so sin >= 0.
struct Bank {
  double cos_sigma = 1.0;
  double sin_sigma = 0.0;

  static Bank from_angle(double sigma) { return {std::cos(sigma), std::sin(sigma)}; }
  static Bank from_cos(double c) { return {c, std::sqrt(std::fmax(0.0, 1.0 - c * c))}; }
};

/// Downrange rate sign. The raw kinematic form carries a leading minus, which makes
/// s decrease in forward flight; +1 logs travelled distance as a positive quantity.
/// Set to -1.0 to integrate the raw form literally.
inline constexpr double kDownrangeSign = 1.0;

AeroAccel aero_accel(const VehicleState& state, const VehicleParams& params, double rho);

VehicleState state_derivative(const VehicleState& state, AeroAccel aero, double g, Bank bank,
                              double r0);

inline VehicleState state_derivative(const VehicleState& state, AeroAccel aero, double g,
                                     double sigma, double r0) {
  return state_derivative(state, aero, g, Bank::from_angle(sigma), r0);
}

}  // namespace entry
