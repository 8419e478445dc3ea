#include "entry/planet.hpp"

#include <cmath>
#include <string>

#include "entry/error.hpp"

namespace entry {

void PlanetModel::validate() const {
  if (!(mu > 0.0) || !(r0 > 0.0) || !(rho0 > 0.0) || !(hs > 0.0)) {
    throw Error(ErrorKind::invalid_config, "planet constants mu, r0, rho0, hs must all be positive");
  }
}

double density(const PlanetModel& planet, double h, DensityDispersion disp) {
  if (!(disp.frac > -1.0)) {
    throw Error(ErrorKind::invalid_dispersion,
                "density fraction must exceed -1, got " + std::to_string(disp.frac));
  }
  if (!(h >= -planet.hs)) {
    throw Error(ErrorKind::invalid_argument, "altitude below -hs: " + std::to_string(h));
  }
  return (1.0 + disp.frac) * planet.rho0 * std::exp(-h / planet.hs);
}

double gravity(const PlanetModel& planet, double r) {
  if (!(r > 0.0)) {
    throw Error(ErrorKind::nonpositive_radius, "radius must be positive, got " + std::to_string(r));
  }
  return planet.mu / (r * r);
}

}  // namespace entry
