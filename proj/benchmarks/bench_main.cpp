#include <benchmark/benchmark.h>

#include "hurst/liquidity.hpp"
#include "hurst/mfdfa.hpp"
#include "hurst/rolling.hpp"
#include "hurst/spectrum.hpp"
#include "hurst/synth.hpp"

namespace {

using namespace hurst;

void BM_SegmentVariances(benchmark::State& state) {
  const auto profile = build_profile(gen_gaussian(16384, 1).returns);
  const auto s = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(segment_variances(profile, s, 3, 1e-30));
  state.SetItemsProcessed(state.iterations() * 2 * (16384 / s) * s);
}
BENCHMARK(BM_SegmentVariances)->Arg(16)->Arg(256)->Arg(4096);

void BM_Analyze(benchmark::State& state) {
  const auto r = gen_gaussian(static_cast<std::size_t>(state.range(0)), 2).returns;
  MfdfaConfig cfg;
  cfg.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(r, cfg));
}
BENCHMARK(BM_Analyze)
    ->Args({4096, 1})
    ->Args({16384, 1})
    ->Args({16384, 4})
    ->Args({65536, 4})
    ->Unit(benchmark::kMillisecond);

void BM_Fgn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen_fgn(n, 0.7, ++seed));
}
BENCHMARK(BM_Fgn)->Arg(16384)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_Cascade(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(gen_binomial_cascade(static_cast<int>(state.range(0)), 0.75, ++seed));
}
BENCHMARK(BM_Cascade)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

// Three years of daily data, one-year windows stepped daily.
void BM_RollingDaily(benchmark::State& state) {
  ReturnSeries r = gen_gaussian(3 * 365, 3);
  r.dt = std::chrono::days{1};
  RollingConfig cfg;
  cfg.threads = static_cast<unsigned>(state.range(0));
  const MfdfaConfig mf;
  for (auto _ : state) benchmark::DoNotOptimize(rolling_spectrum(r, cfg, mf));
}
BENCHMARK(BM_RollingDaily)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RollingIlliq(benchmark::State& state) {
  std::vector<DailyAggregate> days;
  for (int i = 0; i < 3000; ++i)
    days.push_back({Day{std::chrono::days{i}}, 100.0 + i % 7, 1.0 + i % 5, i ? 0.01 : 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(rolling_illiq(days, 365, 1));
}
BENCHMARK(BM_RollingIlliq)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
