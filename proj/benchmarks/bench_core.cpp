#include "tritter/analysis.hpp"
#include "tritter/measures.hpp"
#include "tritter/tritter_state.hpp"

#include <benchmark/benchmark.h>

using namespace tritter;

static void BM_SymplecticEigenvalues(benchmark::State& state) {
    const auto v = apply_loss(ideal_output_cm(0.6), scenario_config(Scenario{5, 0.4, {}}));
    for (auto _ : state) benchmark::DoNotOptimize(symplectic_eigenvalues(v));
}
BENCHMARK(BM_SymplecticEigenvalues);

static void BM_LogNegativity(benchmark::State& state) {
    const auto v = lossy_state(0.6, 4, 0.5);
    const ModePartition p({kModeC}, {kModeA, kModeB});
    for (auto _ : state) benchmark::DoNotOptimize(log_negativity(v, p));
}
BENCHMARK(BM_LogNegativity);

static void BM_GaussianSteering(benchmark::State& state) {
    const auto v = lossy_state(0.6, 4, 0.5);
    const ModePartition p({kModeA, kModeB}, {kModeC});
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_steering(v, p));
}
BENCHMARK(BM_GaussianSteering);

static void BM_Threshold(benchmark::State& state) {
    const auto id = parse_measure_id("S:ij->k@s5");
    for (auto _ : state) benchmark::DoNotOptimize(find_threshold(id, 0.5));
}
BENCHMARK(BM_Threshold);

static void BM_Sweep(benchmark::State& state) {
    SweepSpec spec;
    spec.scenario = 4;
    spec.step = 0.01;
    spec.measures = default_measures();
    spec.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
