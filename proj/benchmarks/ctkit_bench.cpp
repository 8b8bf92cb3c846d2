#include <benchmark/benchmark.h>

#include <random>

#include "ctkit/arith.hpp"
#include "ctkit/cohomology.hpp"
#include "ctkit/jordan.hpp"
#include "ctkit/module.hpp"
#include "ctkit/zeta.hpp"

using namespace ctkit;

namespace {

void BM_Smith(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PadicContext ctx(2, 16);
  std::mt19937_64 rng(1);
  std::vector<std::int64_t> v(n * n);
  for (auto& x : v) x = static_cast<std::int64_t>(rng() % 1024) - 512;
  const ModMatrix m = ModMatrix::from_signed(n, n, v, ctx);
  for (auto _ : state) benchmark::DoNotOptimize(smith(m, ctx));
}
BENCHMARK(BM_Smith)->Arg(8)->Arg(32)->Arg(64);

void BM_TateScan(benchmark::State& state) {
  const auto g = catalog("dihedral", {8});
  const FgModule a = random_finite_module(g, PadicContext(2, minimum_precision(*g, 2) + 2), {}, 5);
  for (auto _ : state) benchmark::DoNotOptimize(ct_definition_scan(a));
}
BENCHMARK(BM_TateScan);

void BM_TateRegular(benchmark::State& state) {
  const auto g = catalog("elementary", {2, static_cast<int>(state.range(0))});
  const FgModule a = regular_module(g, 1, PadicContext(2, 8));
  for (auto _ : state) benchmark::DoNotOptimize(tate(a, 2));
}
BENCHMARK(BM_TateRegular)->Arg(2)->Arg(3)->Arg(4);

void BM_Zeta(benchmark::State& state) {
  const auto g = cyclic_group(static_cast<int>(state.range(0)), 1);
  const int window = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(zeta_coefficients(g, 1, window));
}
BENCHMARK(BM_Zeta)->Args({2, 6})->Args({2, 9})->Args({3, 7});

void BM_JordanTensor(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const int top = p * p;
  for (auto _ : state)
    for (int r = 1; r <= top; ++r) benchmark::DoNotOptimize(tensor_decompose(r, top - r + 1, p, 2));
}
BENCHMARK(BM_JordanTensor)->Arg(2)->Arg(3)->Arg(5);

void BM_HomFreeness(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& parts : partitions(static_cast<int>(state.range(0)), 3))
      benchmark::DoNotOptimize(verify_lemma44({3, 1, parts}));
}
BENCHMARK(BM_HomFreeness)->Arg(6)->Arg(12);

}  // namespace
BENCHMARK_MAIN();
