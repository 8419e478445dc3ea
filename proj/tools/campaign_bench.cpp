// Campaign throughput: OpenMP fan-out against the serial reference.

#include <benchmark/benchmark.h>

#include <memory>

#include "entry/monte_carlo.hpp"
#include "entry/reference.hpp"

namespace {

const entry::CampaignSpec& spec_for(std::size_t runs) {
  static const auto profile = std::make_shared<const entry::ReferenceProfile>(
      entry::generate_reference(entry::Scenario{}, entry::BankSchedule{}, 0.01).profile);
  static entry::CampaignSpec spec = [] {
    entry::CampaignSpec s;
    s.base.reference = profile;
    s.base.observer.eps = 0.425;
    s.base.keep_log = false;
    return s;
  }();
  spec.runs = runs;
  return spec;
}

void BM_CampaignSerial(benchmark::State& state) {
  const auto& spec = spec_for(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(entry::run_campaign_serial(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CampaignParallel(benchmark::State& state) {
  const auto& spec = spec_for(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(entry::run_campaign(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_CampaignSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CampaignParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
