#include <benchmark/benchmark.h>

#include <random>

#include "tcensus/bounds.hpp"
#include "tcensus/census.hpp"
#include "tcensus/elliptic.hpp"
#include "tcensus/families.hpp"

using namespace tcensus;

static void BM_Gen2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gen2(state.range(0)).size());
}
BENCHMARK(BM_Gen2)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Gen3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gen3(state.range(0)).size());
}
BENCHMARK(BM_Gen3)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Gen5Gen7(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen5(state.range(0)).size());
    benchmark::DoNotOptimize(gen7(state.range(0)).size());
  }
}
BENCHMARK(BM_Gen5Gen7)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_TorsionSubgroup(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const std::int64_t m = state.range(0);
  std::uniform_int_distribution<std::int64_t> dist(-m, m);
  std::vector<CurvePair> curves;
  while (curves.size() < 256) {
    const std::int64_t a = dist(rng), b = dist(rng);
    if (4 * a * a * a + 27 * b * b != 0) curves.emplace_back(a, b);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(torsion_subgroup(curves[i++ % curves.size()]).points.size());
  }
}
BENCHMARK(BM_TorsionSubgroup)->Arg(100)->Arg(100000);

static void BM_TorsionGeneric(benchmark::State& state) {
  const CurvePair e(-1386747, 368636886);
  for (auto _ : state) benchmark::DoNotOptimize(detail::torsion_subgroup_generic(e).points.size());
}
BENCHMARK(BM_TorsionGeneric);

static void BM_FactorU64(benchmark::State& state) {
  std::mt19937_64 rng(11);
  for (auto _ : state) benchmark::DoNotOptimize(detail::factor_u64(rng() >> 4).size());
}
BENCHMARK(BM_FactorU64);

static void BM_CountC(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_C_minimal(state.range(0)));
}
BENCHMARK(BM_CountC)->Arg(100000)->Unit(benchmark::kMicrosecond);

static void BM_Census(benchmark::State& state) {
  CensusConfig c;
  c.max_coeff = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(run_census(c).t_union);
}
BENCHMARK(BM_Census)->Arg(10000)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
