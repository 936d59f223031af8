#include <benchmark/benchmark.h>

#include "ucom2/data_io.hpp"
#include "ucom2/derand.hpp"
#include "ucom2/problems.hpp"
#include "ucom2/verify.hpp"

namespace {

void BM_GreedyIncremental(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = ucom2::gen_fl_random(n, 7, std::max(2, n / 10));
  const auto comp = ucom2::build_fl(inst);
  const auto p0 = ucom2::random_prob_vector(n, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ucom2::greedy_derandomize(comp, p0));
  }
}
BENCHMARK(BM_GreedyIncremental)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_GreedyNaive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = ucom2::gen_fl_random(n, 7, std::max(2, n / 10));
  const auto comp = ucom2::build_fl(inst);
  const auto p0 = ucom2::random_prob_vector(n, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ucom2::greedy_derandomize_naive(comp, p0));
  }
}
BENCHMARK(BM_GreedyNaive)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_IdScan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto comp = ucom2::random_binary_composite(n, 3);
  const auto p = ucom2::random_prob_vector(n, 5);
  ucom2::IdTable ids(n, 2);
  for (auto _ : state) {
    ids.fill(0.0);
    comp.ids(p, ids);
    benchmark::DoNotOptimize(ids);
  }
}
BENCHMARK(BM_IdScan)->Arg(100)->Arg(400);

}  // namespace
