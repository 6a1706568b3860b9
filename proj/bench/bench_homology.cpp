#include <benchmark/benchmark.h>

#include "hfcone/cone.hpp"

using namespace hfcone;

namespace {

const FiniteComplex& borromean_cone(int genus, int delta) {
  static std::map<std::pair<int, int>, FiniteComplex> cache;
  auto it = cache.find({genus, delta});
  if (it == cache.end()) {
    const KnotComplex c = builtin_borromean(genus);
    it = cache.emplace(std::make_pair(genus, delta), build_cone(c, 1, 0, delta, truncation_width(c, 1)).complex).first;
  }
  return it->second;
}

void BM_HomologySerial(benchmark::State& state) {
  const FiniteComplex& x = borromean_cone(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(homology(x, Execution::serial)));
  state.counters["dim"] = x.dim();
}

void BM_HomologyParallel(benchmark::State& state) {
  const FiniteComplex& x = borromean_cone(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(homology(x, Execution::parallel)));
  state.counters["dim"] = x.dim();
}

void BM_DenseReference(benchmark::State& state) {
  const FiniteComplex& x = borromean_cone(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(reference_decompose(x));
  state.counters["dim"] = x.dim();
}

void BM_SurgeryAll(benchmark::State& state) {
  const KnotComplex c = builtin_t34();
  for (auto _ : state) benchmark::DoNotOptimize(surgery_homology_all(c, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_HomologySerial)->Args({2, 10})->Args({3, 20})->Args({4, 20})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomologyParallel)->Args({2, 10})->Args({3, 20})->Args({4, 20})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseReference)->Args({2, 10})->Args({3, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SurgeryAll)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
