#include <gtest/gtest.h>

#include <cmath>

#include "entry/error.hpp"
#include "entry/observer.hpp"
#include "entry/sim.hpp"
#include "fixtures.hpp"

using namespace entry;

TEST(Observer, ZeroInnovation) {
  const ObserverGains g;
  const ObserverRates r = observer_derivative({0.3, -0.2}, g, 0.3, 1.5, -2.0, 0.4, 0.7);
  EXPECT_DOUBLE_EQ(r.xhat1_dot, -0.2);
  EXPECT_DOUBLE_EQ(r.xhat2_dot, 1.5 - 0.7 + -2.0 * 0.4);
}

TEST(Observer, CorrectionGainScaling) {
  ObserverGains g;
  g.eps = 0.5;
  const ObserverRates r = observer_derivative({0.0, 0.0}, g, 1.0, 0.0, 0.0, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(r.xhat1_dot, 4.0);
  EXPECT_DOUBLE_EQ(r.xhat2_dot, 4.0);
}

TEST(Observer, GainValidation) {
  ObserverGains g;
  EXPECT_TRUE(g.hurwitz());
  g.h2 = 0.0;
  EXPECT_FALSE(g.hurwitz());
  EXPECT_THROW(g.validate(), Error);
  g = ObserverGains{};
  g.eps = 0.0;
  EXPECT_THROW(g.validate(), Error);
}

namespace {

double steady_rate_error(double eps) {
  SimConfig cfg = fixtures::nominal_config(eps);
  const TrajectoryLog log = run_trajectory(cfg);
  const double t0 = fixtures::steady_start(log, 5.0 * cfg.guidance.eps0);
  double worst = 0.0;
  for (const auto& r : log.records) {
    if (r.t >= t0) worst = std::max(worst, std::abs(r.xhat2 - r.x2));
  }
  return worst;
}

}  // namespace

TEST(Observer, EstimateErrorScalesWithEps) {
  const double e2 = steady_rate_error(0.2);
  const double e4 = steady_rate_error(0.4);
  EXPECT_LE(e2, 0.5 * e4) << "eps=0.2: " << e2 << ", eps=0.4: " << e4;
}

TEST(Observer, CampaignAndNominalEpsStayFinite) {
  for (double eps : {1.78, 0.425}) {
    const TrajectoryLog log = run_trajectory(fixtures::nominal_config(eps));
    for (const auto& r : log.records) {
      ASSERT_TRUE(std::isfinite(r.xhat1) && std::isfinite(r.xhat2));
    }
  }
}

// With exact initialization and a perfect model the estimate only carries truncation error.
TEST(Observer, OpenLoopExactInitialization) {
  SimConfig cfg = fixtures::nominal_config(0.425);
  const TrajectoryLog log = run_open_loop(cfg, std::cos(deg2rad(50.0)), PlantInput::smooth);
  double worst = 0.0;
  double scale = 0.0;
  for (const auto& r : log.records) {
    worst = std::max(worst, std::abs(r.xhat1 - r.x1));
    scale = std::max(scale, std::abs(r.drag));
  }
  EXPECT_LT(worst, 1e-6 * scale);
}
