#pragma once

namespace entry {

/// Exponential-atmosphere, inverse-square-gravity planet. Defaults are Mars.
struct PlanetModel {
  double mu = 4.2828e13;   // m^3/s^2
  double r0 = 3397.0e3;    // m
  double rho0 = 0.0158;    // kg/m^3 at r0
  double hs = 9354.0;      // m

  void validate() const;
};

/// Constant multiplicative density deviation; +0.2 means +20%.
struct DensityDispersion {
  double frac = 0.0;
};

/// Atmospheric density at altitude h (m). Throws invalid-dispersion for frac <= -1.
double density(const PlanetModel& planet, double h, DensityDispersion disp = {});

/// Gravitational acceleration mu/r^2. Throws nonpositive-radius for r <= 0.
double gravity(const PlanetModel& planet, double r);

}  // namespace entry
