// Parallel kernels against their serial references, and the L2 crossover
// between the divide-and-conquer sum and the direct pair sum.

#include <benchmark/benchmark.h>

#include "discrepancy/generators.hpp"
#include "discrepancy/l2.hpp"
#include "discrepancy/linf_exact.hpp"
#include "discrepancy/lp.hpp"
#include "discrepancy/random.hpp"

using namespace disc;

namespace {

PointSet random_set(std::size_t n, std::size_t d) {
  Rng rng(n * 131 + d);
  std::vector<double> c(n * d);
  for (double& v : c) v = uniform01(rng);
  return PointSet(d, std::move(c));
}

void BM_Warnock(benchmark::State& state) {
  const PointSet x = random_set(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(warnock_star_l2_sq(x));
  state.SetComplexityN(state.range(0));
}

void BM_WarnockSerial(benchmark::State& state) {
  const PointSet x = random_set(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(serial::warnock_star_l2_sq(x));
  state.SetComplexityN(state.range(0));
}

void BM_GridEnum(benchmark::State& state) {
  const PointSet x = random_set(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(star_grid_enum(x).value);
}

void BM_GridEnumSerial(benchmark::State& state) {
  const PointSet x = random_set(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(serial::star_grid_enum(x).value);
}

void BM_Dem(benchmark::State& state) {
  const PointSet x = random_set(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(star_dem(x).value);
}

void BM_DemSerial(benchmark::State& state) {
  const PointSet x = random_set(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(serial::star_dem(x).value);
}

void BM_LpTuples(benchmark::State& state) {
  const PointSet x = random_set(static_cast<std::size_t>(state.range(0)), 3);
  const auto g = ProductWeights::unit(3);
  for (auto _ : state) benchmark::DoNotOptimize(weighted_star_lp_pow(x, g, 4));
}

void BM_LpTuplesSerial(benchmark::State& state) {
  const PointSet x = random_set(static_cast<std::size_t>(state.range(0)), 3);
  const auto g = ProductWeights::unit(3);
  for (auto _ : state) benchmark::DoNotOptimize(serial::weighted_star_lp_pow(x, g, 4));
}

// d = 2: the direct sum is quadratic, the recursive one n log n.
void BM_CrossoverDirect(benchmark::State& state) {
  const PointSet x = halton(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(serial::warnock_star_l2_sq(x));
}

void BM_CrossoverRecursive(benchmark::State& state) {
  const PointSet x = halton(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(star_l2_sq_fast(x));
}

}  // namespace

BENCHMARK(BM_Warnock)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(BM_WarnockSerial)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(BM_GridEnum)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_GridEnumSerial)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_Dem)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_DemSerial)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_LpTuples)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_LpTuplesSerial)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_CrossoverDirect)->RangeMultiplier(2)->Range(4, 4096);
BENCHMARK(BM_CrossoverRecursive)->RangeMultiplier(2)->Range(4, 4096);

BENCHMARK_MAIN();
