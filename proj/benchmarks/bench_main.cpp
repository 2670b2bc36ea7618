#include <benchmark/benchmark.h>

#include "sizeramsey/arrowing.hpp"
#include "sizeramsey/bounds.hpp"
#include "sizeramsey/coloring.hpp"
#include "sizeramsey/random.hpp"

using namespace sizeramsey;

static void BM_Gnp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomSource rng(42);
  for (auto _ : state) benchmark::DoNotOptimize(gnp(n, 10.0 / static_cast<double>(n), rng));
}
BENCHMARK(BM_Gnp)->Arg(1000)->Arg(10000);

static void BM_RandomPairing(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomSource rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(random_pairing(n, 10, rng));
}
BENCHMARK(BM_RandomPairing)->Arg(1000)->Arg(10000);

static void BM_ArrowsExactK6(benchmark::State& state) {
  const Graph g = Graph::complete(6);
  const auto q = ArrowQuery::cycles_vs_path(3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(arrows_exact(g, q, 25, 1));
}
BENCHMARK(BM_ArrowsExactK6)->Unit(benchmark::kMillisecond);

static void BM_GrowBluePath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomSource rng(3);
  const Graph g = gnp(n, 20.0 / static_cast<double>(n), rng);
  const EdgeColoring col(g, Color::blue);
  for (auto _ : state) benchmark::DoNotOptimize(grow_blue_path(g, col, {n / 2, 0, n}));
}
BENCHMARK(BM_GrowBluePath)->Arg(1000)->Arg(10000);

static void BM_SolveDFirst(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_d_first(1.0));
}
BENCHMARK(BM_SolveDFirst);

static void BM_U3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(u3(2.5));
}
BENCHMARK(BM_U3);

BENCHMARK_MAIN();
