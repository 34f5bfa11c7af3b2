#include <benchmark/benchmark.h>

#include "pslab/ps_core.hpp"

using namespace pslab;

static void BM_SievePrimes(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(x).size());
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x));
}
BENCHMARK(BM_SievePrimes)->Arg(1'000'000)->Arg(10'000'000);

static void BM_FloorRootWord(benchmark::State& state) {
  u64 n = 1'000'003;
  for (auto _ : state) {
    benchmark::DoNotOptimize(floor_root_power(n, 20, 21));
    n += 7919;
  }
}
BENCHMARK(BM_FloorRootWord);

static void BM_FloorRootExact(benchmark::State& state) {
  BigInt n("123456789012345678901234567890");
  for (auto _ : state) {
    benchmark::DoNotOptimize(floor_root_power_exact(n, 20, 21));
    n += 1;
  }
}
BENCHMARK(BM_FloorRootExact);

static void BM_PSPrimes(benchmark::State& state) {
  const PSExponent c(21, 20);
  for (auto _ : state) benchmark::DoNotOptimize(ps_primes(static_cast<u64>(state.range(0)), c).members.size());
}
BENCHMARK(BM_PSPrimes)->Arg(100'000)->Arg(1'000'000);
