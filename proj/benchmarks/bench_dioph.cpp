#include <benchmark/benchmark.h>

#include "pslab/diophantine.hpp"
#include "pslab/mean_value.hpp"

using namespace pslab;

static void BM_MitmCount(benchmark::State& state) {
  const auto primes = ps_primes(static_cast<u64>(state.range(0)), PSExponent(21, 20)).members;
  const auto sys = dioph::validate_system({1, 1, -1, -1}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dioph::count_solutions(primes, sys));
  state.counters["set"] = static_cast<double>(primes.size());
}
BENCHMARK(BM_MitmCount)->Arg(10'000)->Arg(100'000);

static void BM_MeanValueCount(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(expsum::mean_value_count(static_cast<u64>(state.range(0)), 2, 4));
}
BENCHMARK(BM_MeanValueCount)->Arg(300)->Arg(1000);
