// Adjacency: serial exact brute force against the OpenMP integer-frame kernel,
// plus the collared enumeration that sits on top of the kernel.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "pinwheel/patches.hpp"

using namespace pinwheel;

namespace {

void BM_AdjacencyReference(benchmark::State& state) {
  const auto s = supertile(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(adjacency_reference(s.tiles, CollarConvention::Closed));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_AdjacencyReference)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_AdjacencyKernel(benchmark::State& state) {
  const auto s = supertile(static_cast<int>(state.range(0)));
  const TileIndex idx(s.tiles);
  for (auto _ : state) benchmark::DoNotOptimize(idx.adjacency(CollarConvention::Closed));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
  state.counters["threads"] = omp_get_max_threads();
}
BENCHMARK(BM_AdjacencyKernel)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_CollaredClasses(benchmark::State& state) {
  const Context ctx(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(collared_classes(ctx, 1));
}
BENCHMARK(BM_CollaredClasses)->DenseRange(4, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
