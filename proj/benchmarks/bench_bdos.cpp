#include <benchmark/benchmark.h>

#include "imd/bdos/sim.hpp"

namespace {

void BM_SimulateNoDefense(benchmark::State& state) {
  imd::bdos::AttackScenario s;
  s.rate_hz = static_cast<double>(state.range(0));
  s.duration_s = 600;
  s.per_request_j = 1e-4;
  s.sleep_power_w = 3e-6;
  s.record_events = false;
  for (auto _ : state) {
    auto t = imd::bdos::simulate(s);
    benchmark::DoNotOptimize(t.summary.battery_consumed_j);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * s.rate_hz * s.duration_s));
}

void BM_SimulateZpd(benchmark::State& state) {
  imd::bdos::AttackScenario s;
  s.defense = imd::bdos::Defense::Zpd;
  s.rate_hz = static_cast<double>(state.range(0));
  s.duration_s = 600;
  s.per_request_j = 1e-4;
  s.sleep_power_w = 3e-6;
  s.record_events = false;
  for (auto _ : state) {
    auto t = imd::bdos::simulate(s);
    benchmark::DoNotOptimize(t.summary.attempts_served);
  }
}

}  // namespace

BENCHMARK(BM_SimulateNoDefense)->Arg(1)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateZpd)->Arg(1)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
