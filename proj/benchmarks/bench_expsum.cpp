#include <benchmark/benchmark.h>

#include <random>

#include "pslab/fourier.hpp"
#include "pslab/weyl.hpp"

using namespace pslab;

static void BM_WeylSum(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  const auto a = TorusPoint::from_double(0.6180339887498949);
  for (auto _ : state) benchmark::DoNotOptimize(expsum::weyl_sum(x, 2, a));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x));
}
BENCHMARK(BM_WeylSum)->Arg(100'000)->Arg(1'000'000);

static void BM_WeylSumRational(benchmark::State& state) {
  const auto a = TorusPoint::from_rational(355, 1131);
  for (auto _ : state) benchmark::DoNotOptimize(expsum::weyl_sum(1'000'000, 3, a));
}
BENCHMARK(BM_WeylSumRational);

static void BM_FourierGrid(benchmark::State& state) {
  const u64 N = static_cast<u64>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<std::pair<u64, double>> pairs;
  for (int i = 0; i < 2000; ++i) pairs.emplace_back(1 + rng() % N, 1.0);
  const auto f = SparseWeights::from_pairs(N, pairs);
  for (auto _ : state) benchmark::DoNotOptimize(expsum::fourier_grid(f, expsum::default_grid_size(N)).values.size());
}
BENCHMARK(BM_FourierGrid)->Arg(1 << 16)->Arg(1 << 20);
