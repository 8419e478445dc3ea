#pragma once

#include "entry/planet.hpp"
#include "entry/vehicle.hpp"

namespace entry {

/// Entry-interface conditions, in the units people quote them in.
struct EntryInterface {
  double altitude_km = 126.1;
  double velocity_km_s = 6.75;
  double flight_path_deg = -14.4;
  double longitude_deg = 0.0;
  double latitude_deg = 0.0;
  double heading_deg = 90.0;

  VehicleState to_state(const PlanetModel& planet) const;
};

/// A run ends at the first of: v <= velocity, h <= altitude_floor, t >= max_time.
struct TerminalConditions {
  double velocity = 503.0;       // m/s
  double altitude_floor = 1.0e3; // m
  double max_time = 1500.0;      // s
};

struct Scenario {
  PlanetModel planet;
  VehicleParams vehicle;
  EntryInterface entry;
  TerminalConditions terminal;

  void validate() const;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace entry
