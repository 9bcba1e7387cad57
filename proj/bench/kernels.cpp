#include <benchmark/benchmark.h>

#include "bargmann/parallel.hpp"
#include "bargmann/reference.hpp"

namespace {

using namespace bargmann;

void OverlapStatistics_Parallel(benchmark::State& state) {
  const Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_overlap_statistics(3, state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void OverlapStatistics_Serial(benchmark::State& state) {
  const Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::sample_overlap_statistics(3, state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void RegionSweep_Parallel(benchmark::State& state) {
  const Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_random_tuples(5, 4, state.range(0), rng, 1e-9));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void RegionSweep_Serial(benchmark::State& state) {
  const Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::sweep_random_tuples(5, 4, state.range(0), rng, 1e-9));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void ShotSampling_Parallel(benchmark::State& state) {
  const Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_plus_minus_mean(0.4, state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void ShotSampling_Serial(benchmark::State& state) {
  const Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(reference::sample_plus_minus_mean(0.4, state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void CriterionSweep_Parallel(benchmark::State& state) {
  const Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(criterion_agreement_sweep(state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void CriterionSweep_Serial(benchmark::State& state) {
  const Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(reference::criterion_agreement_sweep(state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

StateTuple mixed_tuple(std::size_t n, int d) {
  Rng rng(5);
  std::vector<DensityMatrix> ms;
  for (std::size_t k = 0; k < n; ++k) ms.push_back(random_density(d, 2, rng));
  return StateTuple::from_densities(ms);
}

void MixedOrbit_Parallel(benchmark::State& state) {
  const StateTuple t = mixed_tuple(4, 3);
  const MixedOrbitOptions options{static_cast<std::size_t>(state.range(0)), 2'000'000, 1e-8};
  for (auto _ : state) benchmark::DoNotOptimize(mixed_orbit_equal(t, t, options));
}

void MixedOrbit_Serial(benchmark::State& state) {
  const StateTuple t = mixed_tuple(4, 3);
  const MixedOrbitOptions options{static_cast<std::size_t>(state.range(0)), 2'000'000, 1e-8};
  for (auto _ : state) benchmark::DoNotOptimize(reference::mixed_orbit_equal(t, t, options));
}

BENCHMARK(OverlapStatistics_Parallel)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(OverlapStatistics_Serial)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(RegionSweep_Parallel)->Arg(20'000)->Unit(benchmark::kMillisecond);
BENCHMARK(RegionSweep_Serial)->Arg(20'000)->Unit(benchmark::kMillisecond);
BENCHMARK(ShotSampling_Parallel)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(ShotSampling_Serial)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(CriterionSweep_Parallel)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(CriterionSweep_Serial)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(MixedOrbit_Parallel)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(MixedOrbit_Serial)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
