#include <gtest/gtest.h>

#include <cmath>

#include "entry/drag_model.hpp"
#include "entry/error.hpp"
#include "entry/planet.hpp"
#include "entry/vehicle.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace entry;

TEST(PTerm, LevelFlightUnitCase) {
  const DragKinematics k{1.0, 1.0, 0.0, 3.7, 3.4e6, 0.2};
  EXPECT_DOUBLE_EQ(p_term(k, 9354.0), -2.0);
}

TEST(PTerm, VanishesWithDrag) {
  DragKinematics k{1e-12, 5000.0, -0.2, 3.7, 3.5e6, 1e-13};
  EXPECT_LT(std::abs(p_term(k, 9354.0)), 1e-10);
}

TEST(FG0, SignAndLiftProportionality) {
  DragKinematics k{5.0, 4000.0, -0.2, 3.7, 3.45e6, 0.9};
  EXPECT_LT(f_g0_terms(k, 9354.0).g0, 0.0);
  k.l = 0.0;
  EXPECT_EQ(f_g0_terms(k, 9354.0).g0, 0.0);
  EXPECT_THROW(require_invertible(0.0), Error);
  EXPECT_NO_THROW(require_invertible(-1e-3));
}

// Nested central differences along the flow (steps chosen above the roundoff floor set by
// exp(-(r - r0)/hs) at r ~ 3.4e6 m). Directly differentiate D(r, v, gamma) along the plant vector field to check p, f, g0
// at an arbitrary state; independent of any logged trajectory.
TEST(FG0, MatchesDirectionalDerivativeOfThePlant) {
  const PlanetModel planet;
  const VehicleParams veh;
  const VehicleState s0{planet.r0 + 42e3, 0.0, 0.0, 5200.0, -0.15, kPi / 2, 0.0};

  for (double sigma : {0.3, 1.1, 2.4}) {
    auto drag_at = [&](const VehicleState& s) {
      return aero_accel(s, veh, density(planet, s.r - planet.r0)).drag;
    };
    auto flow = [&](const VehicleState& s) {
      const AeroAccel a = aero_accel(s, veh, density(planet, s.r - planet.r0));
      return state_derivative(s, a, gravity(planet, s.r), sigma, planet.r0);
    };
    // Ddot along the flow, as a function of the state.
    auto ddot = [&](const VehicleState& s) {
      const VehicleState f = flow(s);
      const double h = 1e-4;
      auto shift = [&](double e) {
        VehicleState x = s;
        x.r += e * f.r;
        x.v += e * f.v;
        x.gamma += e * f.gamma;
        return drag_at(x);
      };
      return (shift(h) - shift(-h)) / (2 * h);
    };
    const VehicleState f = flow(s0);
    auto along = [&](double e) {
      VehicleState x = s0;
      x.r += e * f.r;
      x.v += e * f.v;
      x.gamma += e * f.gamma;
      return ddot(x);
    };
    const double dddot_fd = oracle::central(along, 0.0, 1e-2);

    const AeroAccel a = aero_accel(s0, veh, density(planet, s0.r - planet.r0));
    const DragKinematics k{a.drag, s0.v, s0.gamma, gravity(planet, s0.r), s0.r, a.lift};
    EXPECT_NEAR(p_term(k, planet.hs), ddot(s0), 1e-6 * std::abs(ddot(s0)));
    const DragAccelTerms t = f_g0_terms(k, planet.hs);
    const double model = t.f + t.g0 * std::cos(sigma);
    EXPECT_NEAR(model, dddot_fd, 1e-4 * std::abs(dddot_fd)) << "sigma=" << sigma;
  }
}

// Along the open-loop reference: logged drag against its analytic derivatives.
TEST(DragModel, ConsistencyChainOnReferenceRun) {
  const auto& run = fixtures::nominal_reference();
  const auto samples = run.profile.samples();
  const double h = samples[1].t - samples[0].t;
  std::vector<double> d;
  for (const auto& s : samples) d.push_back(s.d_star);

  std::vector<double> p, p_fd, dd, dd_fd;
  for (std::size_t i = 2; i + 3 < samples.size(); ++i) {
    if (samples[i].t < 10.0) continue;
    p.push_back(samples[i].d_star_dot);
    p_fd.push_back(oracle::d1_5pt(d, i, h));
    dd.push_back(samples[i].d_star_ddot);
    dd_fd.push_back(oracle::d2_5pt(d, i, h));
  }
  EXPECT_LT(oracle::max_rel(p, p_fd), 1e-3);
  EXPECT_LT(oracle::max_rel(dd, dd_fd), 5e-3);
}
