#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "entry/error.hpp"
#include "entry/monte_carlo.hpp"
#include "fixtures.hpp"

using namespace entry;

TEST(Dispersions, DeterministicPerSeed) {
  std::mt19937_64 a(99);
  std::mt19937_64 b(99);
  EXPECT_EQ(sample_dispersions(a), sample_dispersions(b));
}

TEST(Dispersions, RangesAndOrderStatistics) {
  const DispersionRanges r;
  std::mt19937_64 rng(7);
  double lo[4] = {1, 1, 1, 1};
  double hi[4] = {-1, -1, -1, -1};
  const double w[4] = {r.d_m, r.d_rho, r.d_cl, r.d_cd};
  for (int i = 0; i < 1000; ++i) {
    const DispersionSet d = sample_dispersions(rng, r);
    const double v[4] = {d.d_m, d.d_rho, d.d_cl, d.d_cd};
    for (int k = 0; k < 4; ++k) {
      ASSERT_GE(v[k], -w[k]);
      ASSERT_LE(v[k], w[k]);
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }
  }
  for (int k = 0; k < 4; ++k) {
    EXPECT_LT(lo[k], -w[k] + 0.02 * 2 * w[k]);
    EXPECT_GT(hi[k], w[k] - 0.02 * 2 * w[k]);
  }
}

TEST(Dispersions, EndpointsAreValidSets) {
  const DispersionRanges r;
  for (double s : {-1.0, 1.0}) {
    SimConfig cfg = fixtures::nominal_config(0.425);
    cfg.dispersion = {s * r.d_m, s * r.d_rho, s * r.d_cl, s * r.d_cd};
    EXPECT_NO_THROW(cfg.validate());
  }
}

TEST(Seeds, StableUnderGrowth) {
  EXPECT_EQ(run_seed(5, 3), run_seed(5, 3));
  EXPECT_NE(run_seed(5, 3), run_seed(5, 4));
  EXPECT_NE(run_seed(5, 3), run_seed(6, 3));
}

TEST(Statistics, Textbook) {
  const std::vector<double> v{1, 2, 3};
  const Statistics s = statistics(v);
  EXPECT_EQ(s.min, 1);
  EXPECT_EQ(s.max, 3);
  EXPECT_EQ(s.mean, 2);
  EXPECT_EQ(s.std, 1);
  const std::vector<double> one{5};
  const Statistics t = statistics(one);
  EXPECT_EQ(t.min, 5);
  EXPECT_EQ(t.max, 5);
  EXPECT_EQ(t.mean, 5);
  EXPECT_EQ(t.std, 0);
  EXPECT_THROW(statistics(std::vector<double>{}), Error);
}

TEST(Statistics, UniformMean) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(1000);
  for (auto& x : v) x = u(rng);
  EXPECT_NEAR(statistics(v).mean, 0.5, 0.03);
}

namespace {

CampaignSpec small_campaign(std::size_t n) {
  CampaignSpec spec;
  spec.base = fixtures::nominal_config(0.425);
  spec.targets = fixtures::reference_targets();
  spec.runs = n;
  spec.master_seed = 11;
  return spec;
}

}  // namespace

TEST(Campaign, SingletonSummary) {
  const McReport r = run_campaign(small_campaign(1));
  ASSERT_EQ(r.runs.size(), 1u);
  ASSERT_TRUE(r.runs[0].ok);
  EXPECT_EQ(r.downrange.min, r.downrange.max);
  EXPECT_EQ(r.downrange.mean, r.runs[0].downrange_error_km);
  EXPECT_EQ(r.altitude.std, 0.0);
}

TEST(Campaign, ParallelMatchesSerialAndIsDeterministic) {
  const CampaignSpec spec = small_campaign(8);
  const McReport a = run_campaign(spec);
  const McReport b = run_campaign(spec);
  const McReport c = run_campaign_serial(spec);
  std::ostringstream sa, sb, sc;
  write_runs_csv(sa, a);
  write_runs_csv(sb, b);
  write_runs_csv(sc, c);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(sa.str(), sc.str());
  EXPECT_EQ(summary_json(a), summary_json(c));
}

TEST(Campaign, AddingRunsKeepsEarlierRuns) {
  const McReport a = run_campaign(small_campaign(3));
  const McReport b = run_campaign(small_campaign(5));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a.runs[i].seed, b.runs[i].seed);
    EXPECT_EQ(a.runs[i].dispersion, b.runs[i].dispersion);
    EXPECT_EQ(a.runs[i].downrange_error_km, b.runs[i].downrange_error_km);
  }
}

TEST(Campaign, FailuresAreCountedNotThrown) {
  CampaignSpec spec = small_campaign(4);
  spec.base.scenario.terminal.max_time = 40.0;  // every run times out
  const McReport r = run_campaign(spec);
  EXPECT_EQ(r.failures, 4u);
  EXPECT_TRUE(r.failed());
  EXPECT_NE(r.runs[0].failure.find("timeout"), std::string::npos);
  EXPECT_NE(summary_json(r).find("\"campaign_failed\": true"), std::string::npos);
}

TEST(Campaign, SummaryTableLayout) {
  const McReport r = run_campaign(small_campaign(3));
  const std::string one = summary_table(r);
  for (const char* row : {"Minimum", "Maximum", "Average", "Standard deviation"}) {
    EXPECT_NE(one.find(row), std::string::npos);
  }
  CampaignSpec b = small_campaign(3);
  b.base.guidance.law = GuidanceLawKind::no_integral;
  const McReport rb = run_campaign(b);
  const std::string two = summary_table(r, &rb);
  EXPECT_NE(two.find("Downrange Error (km)"), std::string::npos);
  EXPECT_NE(two.find("no-integral"), std::string::npos);
}

TEST(Campaign, RejectsZeroRuns) { EXPECT_THROW(run_campaign(small_campaign(0)), Error); }
