#include <benchmark/benchmark.h>

#include <omp.h>

#include "twopoint/bench.hpp"

using namespace twopoint;

namespace {

void BM_Serial(benchmark::State& state) {
    const auto jobs = bench_jobs(TableSelection::all);
    const SolverConfig config;
    for (auto _ : state) benchmark::DoNotOptimize(run_bench_serial(jobs, config));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(jobs.size()));
}

void BM_Parallel(benchmark::State& state) {
    const auto jobs = bench_jobs(TableSelection::all);
    const SolverConfig config;
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_bench_parallel(jobs, config));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(jobs.size()));
}

// One expensive run on its own: the slow two-point cube-root convergence.
void BM_SolveCbrt(benchmark::State& state) {
    const Expression f = parse("cbrt(x)");
    for (auto _ : state) benchmark::DoNotOptimize(solve(f, Method::two_point, 1.0));
}

}  // namespace

BENCHMARK(BM_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SolveCbrt)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
