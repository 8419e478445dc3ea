#include "entry/scenario.hpp"

#include "entry/error.hpp"

namespace entry {

VehicleState EntryInterface::to_state(const PlanetModel& planet) const {
  VehicleState x;
  x.r = planet.r0 + altitude_km * 1e3;
  x.phi = deg2rad(longitude_deg);
  x.theta = deg2rad(latitude_deg);
  x.v = velocity_km_s * 1e3;
  x.gamma = deg2rad(flight_path_deg);
  x.chi = deg2rad(heading_deg);
  x.s = 0.0;
  return x;
}

void Scenario::validate() const {
  planet.validate();
  vehicle.validate();
  if (!(entry.altitude_km > 0.0) || !(entry.velocity_km_s > 0.0)) {
    throw Error(ErrorKind::invalid_config, "entry altitude and velocity must be positive");
  }
  if (!(entry.flight_path_deg > -90.0 && entry.flight_path_deg < 90.0)) {
    throw Error(ErrorKind::invalid_config, "entry flight path angle must lie in (-90, 90) deg");
  }
  if (!(entry.latitude_deg > -90.0 && entry.latitude_deg < 90.0)) {
    throw Error(ErrorKind::invalid_config, "entry latitude must lie in (-90, 90) deg");
  }
  if (!(terminal.velocity > 0.0) || !(terminal.altitude_floor > 0.0) || !(terminal.max_time > 0.0)) {
    throw Error(ErrorKind::invalid_config, "terminal conditions must be positive");
  }
  if (!(terminal.velocity < entry.velocity_km_s * 1e3)) {
    throw Error(ErrorKind::invalid_config, "terminal velocity must be below entry velocity");
  }
}

}  // namespace entry
