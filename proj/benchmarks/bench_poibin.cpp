#include <benchmark/benchmark.h>

#include "ucom2/poibin.hpp"
#include "ucom2/verify.hpp"

namespace {

void BM_PmfDft(benchmark::State& state) {
  const auto p = ucom2::random_prob_vector(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ucom2::pmf_dft(p));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PmfDft)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_PmfDp(benchmark::State& state) {
  const auto p = ucom2::random_prob_vector(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ucom2::pmf_dp(p));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PmfDp)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_PmfRemoveAll(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = ucom2::random_prob_vector(n, 42);
  const auto dist = ucom2::pmf_dp(p);
  for (auto _ : state) {
    for (int i = 0; i < n; ++i) {
      benchmark::DoNotOptimize(ucom2::pmf_remove(dist, i));
    }
  }
}
BENCHMARK(BM_PmfRemoveAll)->Arg(128)->Arg(512);

}  // namespace
