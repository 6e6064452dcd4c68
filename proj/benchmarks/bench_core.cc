#include <benchmark/benchmark.h>

#include "diris/experiments.hpp"

using namespace diris;

namespace {

ScenarioConfig sized_scenario(int m) {
    ScenarioConfig cfg = default_scenario();
    cfg.M1 = m;
    cfg.M2 = m;
    return cfg;
}

}  // namespace

static void BM_RealizeChannels(benchmark::State& state) {
    const ScenarioConfig cfg = sized_scenario(static_cast<int>(state.range(0)));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        Rng rng(seed++);
        benchmark::DoNotOptimize(realize_channels(cfg, rng));
    }
}
BENCHMARK(BM_RealizeChannels)->Unit(benchmark::kMicrosecond)->Arg(2)->Arg(6)->Arg(10);

static void BM_GroupChannel(benchmark::State& state) {
    const ScenarioConfig cfg = sized_scenario(static_cast<int>(state.range(0)));
    Rng rng(3);
    const MatC h_bar = cascade_elementwise(realize_channels(cfg, rng));
    for (auto _ : state) benchmark::DoNotOptimize(group_channel(h_bar, cfg.N0));
}
BENCHMARK(BM_GroupChannel)->Unit(benchmark::kMicrosecond)->Arg(6)->Arg(10);

static void BM_AoOptimize(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    Rng rng(5);
    MatC h(m, m);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < m; ++r) h(r, c) = rng.cnormal();
    for (auto _ : state) benchmark::DoNotOptimize(ao_optimize(h));
}
BENCHMARK(BM_AoOptimize)->Unit(benchmark::kMicrosecond)->Arg(2)->Arg(6)->Arg(12);

static void BM_TrialScheme1(benchmark::State& state) {
    const ScenarioConfig cfg = sized_scenario(6);
    std::uint64_t t = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trial(trial_seed(1, 0, t++, 1), cfg, Scheme::S1));
}
BENCHMARK(BM_TrialScheme1)->Unit(benchmark::kMicrosecond);

static void BM_TrialScheme2(benchmark::State& state) {
    const ScenarioConfig cfg = sized_scenario(6);
    std::uint64_t t = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trial(trial_seed(1, 0, t++, 2), cfg, Scheme::S2));
}
BENCHMARK(BM_TrialScheme2)->Unit(benchmark::kMicrosecond);

static void BM_TrialSingleIrs(benchmark::State& state) {
    const ScenarioConfig cfg = sized_scenario(6);
    std::uint64_t t = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trial(trial_seed(1, 0, t++, 3), cfg, Scheme::Single));
}
BENCHMARK(BM_TrialSingleIrs)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
