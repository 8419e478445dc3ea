#include "entry/vehicle.hpp"

#include <cmath>
#include <string>

#include "entry/error.hpp"

namespace entry {

void VehicleParams::validate() const {
  if (!(mass > 0.0) || !(area > 0.0) || !(cd0 > 0.0)) {
    throw Error(ErrorKind::invalid_config, "vehicle mass, area and cd0 must be positive");
  }
  if (!(cd0 * (1.0 + d_cd) > 0.0) || !(1.0 + d_m > 0.0)) {
    throw Error(ErrorKind::invalid_dispersion, "dispersed cd0 and mass must stay positive");
  }
  if (!std::isfinite(lift_to_drag()) || !std::isfinite(ballistic_coefficient())) {
    throw Error(ErrorKind::invalid_config, "L/D and ballistic coefficient must be finite");
  }
}

AeroAccel aero_accel(const VehicleState& state, const VehicleParams& params, double rho) {
  if (!(rho >= 0.0)) {
    throw Error(ErrorKind::invalid_argument, "density must be non-negative");
  }
  const double q = rho * state.v * state.v * params.area / (2.0 * params.mass * (1.0 + params.d_m));
  return {q * params.cl0 * (1.0 + params.d_cl), q * params.cd0 * (1.0 + params.d_cd)};
}

VehicleState state_derivative(const VehicleState& x, AeroAccel aero, double g, Bank bank,
                              double r0) {
  const double ct = std::cos(x.theta);
  if (std::abs(ct) < 1e-12) {
    throw Error(ErrorKind::polar_singularity, "latitude at the pole: " + std::to_string(x.theta));
  }
  const double sg = std::sin(x.gamma);
  const double cg = std::cos(x.gamma);
  const double sc = std::sin(x.chi);
  const double cc = std::cos(x.chi);

  VehicleState d;
  d.r = x.v * sg;
  d.phi = x.v * cg * sc / (x.r * ct);
  d.theta = x.v * cg * cc / x.r;
  d.v = -aero.drag - g * sg;
  d.gamma = aero.lift * bank.cos_sigma / x.v - (g / x.v - x.v / x.r) * cg;
  d.chi = aero.lift * bank.sin_sigma / (x.v * cg) + x.v * cg * sc * std::tan(x.theta) / x.r;
  d.s = kDownrangeSign * x.v * r0 * cg / x.r;
  return d;
}

}  // namespace entry
