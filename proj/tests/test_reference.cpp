#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "entry/error.hpp"
#include "entry/reference.hpp"
#include "entry/vehicle.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace entry;

TEST(Reference, EndsOnVelocityEventNearTableValues) {
  const auto& run = fixtures::nominal_reference();
  EXPECT_EQ(run.reason, TerminationReason::velocity);
  EXPECT_NEAR(run.terminal.v, 503.0, 1e-3);
  EXPECT_NEAR((run.terminal.r - PlanetModel{}.r0) / 1e3, 10.0, 0.5);
  EXPECT_NEAR(run.terminal.s / 1e3, 723.32, 15.0);
}

// Near entry interface gravity still outweighs drag and v rises; once D > g|sin(gamma)| it falls.
TEST(Reference, VelocityDecreasesOnceDragDominates) {
  const auto& run = fixtures::nominal_reference();
  const auto samples = run.profile.samples();
  const PlanetModel p;
  std::size_t checked = 0;
  for (std::size_t i = 1; i < run.states.size(); ++i) {
    const auto& s = run.states[i - 1];
    if (samples[i - 1].d_star <= gravity(p, s.r) * std::abs(std::sin(s.gamma))) continue;
    ASSERT_LT(run.states[i].v, s.v) << "t=" << samples[i].t;
    ++checked;
  }
  EXPECT_GT(checked, run.states.size() * 3 / 4);
}

TEST(Reference, FirstSampleIsPlantDrag) {
  const Scenario sc;
  const VehicleState s0 = sc.entry.to_state(sc.planet);
  const double d0 = aero_accel(s0, sc.vehicle, density(sc.planet, s0.r - sc.planet.r0)).drag;
  EXPECT_DOUBLE_EQ(fixtures::nominal_reference().profile.samples().front().d_star, d0);
}

TEST(Reference, StoredRateMatchesDifferences) {
  const auto samples = fixtures::nominal_reference().profile.samples();
  const double peak = fixtures::nominal_reference().profile.peak_drag();
  std::size_t checked = 0;
  for (std::size_t i = 1; i + 2 < samples.size(); ++i) {
    const double fd = (samples[i + 1].d_star - samples[i - 1].d_star) / (samples[i + 1].t - samples[i - 1].t);
    // Relative where the rate is meaningful; near the drag peak it crosses zero.
    if (std::abs(samples[i].d_star_dot) < 1e-3 * peak) continue;
    EXPECT_NEAR(fd, samples[i].d_star_dot, 0.01 * std::abs(samples[i].d_star_dot)) << "t=" << samples[i].t;
    ++checked;
  }
  EXPECT_GT(checked, samples.size() / 2);
}

TEST(Lookup, KnotsMidpointsAndHold) {
  const auto& prof = fixtures::nominal_reference().profile;
  const auto samples = prof.samples();
  for (std::size_t i : {std::size_t{0}, std::size_t{100}, std::size_t{5000}, samples.size() - 1}) {
    const ReferenceTriple r = prof.lookup(samples[i].t);
    EXPECT_DOUBLE_EQ(r.d_star, samples[i].d_star);
    EXPECT_DOUBLE_EQ(r.d_star_dot, samples[i].d_star_dot);
    EXPECT_DOUBLE_EQ(r.d_star_ddot, samples[i].d_star_ddot);
  }
  const ReferenceTriple late = prof.lookup(prof.t_end() + 50.0);
  EXPECT_EQ(late.d_star, samples.back().d_star);
  EXPECT_EQ(late.d_star_ddot, samples.back().d_star_ddot);
}

TEST(Lookup, MidpointsMatchDenseRegeneration) {
  const auto& coarse = fixtures::nominal_reference().profile;
  const ReferenceRun dense = generate_reference(Scenario{}, BankSchedule{}, 0.001);
  const auto ds = dense.profile.samples();
  double worst = 0.0;
  for (std::size_t i = 5; i + 5 < ds.size(); i += 7) {
    if (ds[i].t > coarse.t_end()) break;
    const double v = coarse.lookup(ds[i].t).d_star;
    worst = std::max(worst, std::abs(v - ds[i].d_star) / ds[i].d_star);
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Reference, CsvRoundTrip) {
  const auto& prof = fixtures::nominal_reference().profile;
  std::stringstream ss;
  write_reference_csv(ss, prof);
  const ReferenceProfile back = read_reference_csv(ss);
  ASSERT_EQ(back.samples().size(), prof.samples().size());
  for (std::size_t i = 0; i < back.samples().size(); i += 97) {
    EXPECT_EQ(back.samples()[i].t, prof.samples()[i].t);
    EXPECT_EQ(back.samples()[i].d_star, prof.samples()[i].d_star);
    EXPECT_EQ(back.samples()[i].d_star_ddot, prof.samples()[i].d_star_ddot);
  }
}

TEST(Reference, ProfileValidation) {
  EXPECT_THROW(ReferenceProfile({{0.0, 1.0, 0, 0}, {0.0, 1.0, 0, 0}}), Error);
  EXPECT_THROW(ReferenceProfile({{0.0, 0.0, 0, 0}}), Error);
  EXPECT_THROW(BankSchedule({{0.0, -0.1}}), Error);
  std::stringstream bad("t,d_star,d_star_dot,d_star_ddot\n0,1,2\n");
  EXPECT_THROW(read_reference_csv(bad), Error);
}

TEST(BankSchedule, PiecewiseLinearAndHeld) {
  const BankSchedule b({{1000.0, 0.2}, {3000.0, 1.0}});
  EXPECT_DOUBLE_EQ(b.at(2000.0), 0.6);
  EXPECT_DOUBLE_EQ(b.at(100.0), 0.2);
  EXPECT_DOUBLE_EQ(b.at(9000.0), 1.0);
  EXPECT_DOUBLE_EQ(BankSchedule{}.at(4000.0), deg2rad(50.0));
}

TEST(Reference, TimeoutRaisesNominalRunFailed) {
  Scenario sc;
  sc.terminal.max_time = 20.0;
  try {
    generate_reference(sc, BankSchedule{}, 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::nominal_run_failed);
  }
}
