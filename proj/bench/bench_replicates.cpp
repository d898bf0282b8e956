#include <benchmark/benchmark.h>

#include <thread>

#include "zagreb/replicates.hpp"

namespace {

zagreb::ReplicateConfig config_for(const zagreb::ModelSpec& model, std::uint64_t n, int workers) {
  zagreb::ReplicateConfig c;
  c.model = model;
  c.n = n;
  c.replicates = 2000;
  c.seed = 42;
  c.workers = workers;
  c.keep_samples = false;
  return c;
}

void BM_SerialPort(benchmark::State& state) {
  const auto c = config_for(zagreb::ModelSpec::port(), static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(zagreb::run_replicates_serial(c).sums.s1);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.replicates));
}

void BM_ParallelPort(benchmark::State& state) {
  const auto c = config_for(zagreb::ModelSpec::port(), static_cast<std::uint64_t>(state.range(0)),
                            static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(zagreb::run_replicates(c).sums.s1);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.replicates));
}

void BM_SerialExtRrt(benchmark::State& state) {
  const auto c =
      config_for(zagreb::ModelSpec::extended_rrt(3, 2), static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(zagreb::run_replicates_serial(c).sums.s1);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.replicates));
}

void BM_ParallelExtRrt(benchmark::State& state) {
  const auto c = config_for(zagreb::ModelSpec::extended_rrt(3, 2),
                            static_cast<std::uint64_t>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(zagreb::run_replicates(c).sums.s1);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.replicates));
}

void worker_grid(benchmark::internal::Benchmark* b) {
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  for (const int n : {500, 5000}) {
    for (int w = 1; w <= hw; w *= 2) b->Args({n, w});
    if ((hw & (hw - 1)) != 0) b->Args({n, hw});
  }
}

}  // namespace

BENCHMARK(BM_SerialPort)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelPort)->Apply(worker_grid)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SerialExtRrt)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelExtRrt)->Apply(worker_grid)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
