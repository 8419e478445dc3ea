#include <gtest/gtest.h>

#include <cmath>

#include "entry/error.hpp"
#include "entry/planet.hpp"
#include "entry/scenario.hpp"
#include "entry/vehicle.hpp"
#include "fixtures.hpp"

using namespace entry;

TEST(Density, ReferenceAndScaleHeight) {
  const PlanetModel p;
  EXPECT_DOUBLE_EQ(density(p, 0.0), p.rho0);
  EXPECT_NEAR(density(p, p.hs), p.rho0 / std::exp(1.0), 1e-15);
  EXPECT_NEAR(density(p, p.hs * std::log(2.0), {0.2}), 0.6 * p.rho0, 1e-15);
}

TEST(Density, DispersionScalesAndProfileDecreases) {
  const PlanetModel p;
  double prev = INFINITY;
  for (double h = -5e3; h <= 150e3; h += 2.5e3) {
    const double rho = density(p, h);
    EXPECT_LT(rho, prev);
    prev = rho;
    for (double frac : {-0.5, -0.2, 0.0, 0.3}) {
      EXPECT_NEAR(density(p, h, {frac}), (1.0 + frac) * rho, 1e-15 * rho);
    }
  }
}

TEST(Density, Errors) {
  const PlanetModel p;
  try {
    density(p, 0.0, {-1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_dispersion);
  }
  EXPECT_THROW(density(p, -2.0 * p.hs), Error);
}

TEST(Gravity, InverseSquare) {
  PlanetModel unit;
  unit.mu = 1.0;
  EXPECT_DOUBLE_EQ(gravity(unit, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(gravity(unit, 2.0), 0.25);
  const PlanetModel mars;
  EXPECT_NEAR(gravity(mars, mars.r0), 3.711, 5e-4);
  for (double r = 1e3; r < 1e8; r *= 3.7) EXPECT_NEAR(gravity(mars, r) * r * r, mars.mu, 1e-15 * mars.mu);
  try {
    gravity(mars, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::nonpositive_radius);
  }
}

TEST(Aero, DirectFormulaAndRatio) {
  VehicleParams unit;
  unit.mass = 1.0;
  unit.area = 1.0;
  unit.cd0 = 1.0;
  VehicleState s;
  s.v = 2.0;
  EXPECT_DOUBLE_EQ(aero_accel(s, unit, 1.0).drag, 2.0);

  const VehicleParams v;
  s.v = 4321.0;
  const AeroAccel a = aero_accel(s, v, 3e-4);
  EXPECT_DOUBLE_EQ(a.lift / a.drag, v.cl0 / v.cd0);
  EXPECT_NEAR(v.lift_to_drag(), 0.18, 1e-3);
  EXPECT_NEAR(v.ballistic_coefficient(), 115.0, 0.01);

  VehicleParams hot = v;
  hot.d_cd = 0.3;
  EXPECT_NEAR(aero_accel(s, hot, 3e-4).drag, 1.3 * a.drag, 1e-14 * a.drag);
}

TEST(Aero, MassDispersionDividesBothAccelerations) {
  VehicleParams v;
  VehicleState s;
  s.v = 3000.0;
  const AeroAccel a = aero_accel(s, v, 1e-3);
  v.d_m = 0.05;
  const AeroAccel b = aero_accel(s, v, 1e-3);
  EXPECT_NEAR(b.drag * 1.05, a.drag, 1e-14);
  EXPECT_NEAR(b.lift * 1.05, a.lift, 1e-14);
}

TEST(StateDerivative, SpecialCases) {
  const PlanetModel p;
  VehicleState s{p.r0 + 50e3, 0.1, 0.2, 5000.0, 0.0, 0.3, 0.0};
  const AeroAccel a{0.5, 2.0};
  const double g = gravity(p, s.r);

  VehicleState d = state_derivative(s, a, g, 0.7, p.r0);
  EXPECT_EQ(d.r, 0.0);

  s.gamma = -0.2;
  d = state_derivative(s, a, g, kPi / 2, p.r0);
  EXPECT_NEAR(d.gamma, -(g / s.v - s.v / s.r) * std::cos(s.gamma), 1e-15);

  s.gamma = kPi / 2;
  d = state_derivative(s, a, g, 0.4, p.r0);
  EXPECT_NEAR(d.v, -a.drag - g, 1e-14);
}

TEST(StateDerivative, DownrangeGrowsWithTravel) {
  const PlanetModel p;
  const VehicleState s{p.r0 + 30e3, 0.0, 0.0, 4000.0, -0.1, kPi / 2, 0.0};
  const VehicleState d = state_derivative(s, {0.1, 1.0}, gravity(p, s.r), 0.5, p.r0);
  EXPECT_NEAR(d.s, kDownrangeSign * s.v * p.r0 * std::cos(s.gamma) / s.r, 1e-12);
  EXPECT_GT(d.s, 0.0);
}

TEST(StateDerivative, PolarSingularity) {
  const PlanetModel p;
  const VehicleState s{p.r0 + 30e3, 0.0, kPi / 2, 4000.0, -0.1, 0.0, 0.0};
  try {
    state_derivative(s, {0.1, 1.0}, 3.7, 0.5, p.r0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::polar_singularity);
  }
}

// d/dt (v^2/2 - mu/r) = -D v along the reference trajectory.
TEST(StateDerivative, EnergyDecreasesAlongTrajectory) {
  const auto& run = fixtures::nominal_reference();
  const PlanetModel p;
  double prev = INFINITY;
  for (std::size_t i = 0; i < run.states.size(); i += 50) {
    const auto& s = run.states[i];
    const double e = 0.5 * s.v * s.v - p.mu / s.r;
    EXPECT_LT(e, prev);
    prev = e;
  }
}

TEST(Scenario, InitialStateMatchesEntryInterface) {
  const Scenario sc;
  const VehicleState s = sc.entry.to_state(sc.planet);
  EXPECT_NEAR(s.r - sc.planet.r0, 126.1e3, 1e-6);
  EXPECT_NEAR(s.v, 6750.0, 1e-9);
  EXPECT_NEAR(rad2deg(s.gamma), -14.4, 1e-12);
  EXPECT_NO_THROW(sc.validate());
}

TEST(Vehicle, ValidateRejectsNonPhysical) {
  VehicleParams v;
  v.mass = 0.0;
  EXPECT_THROW(v.validate(), Error);
  v = VehicleParams{};
  v.d_cd = -1.0;
  EXPECT_THROW(v.validate(), Error);
}
