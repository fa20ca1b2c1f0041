#include <benchmark/benchmark.h>

#include "nilrigid/hprinciple/drift.hpp"

using namespace nilrigid;
using namespace nilrigid::hprinciple;

namespace {

void BM_DriftDecomposition(benchmark::State& state) {
  auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 1e-4, 1, 0);
  auto v = to_double(inst.v);
  const double t = drift_time(inst.flow, v).value / 2;
  for (auto _ : state) benchmark::DoNotOptimize(drift_decomposition(inst.flow, v, t));
}
BENCHMARK(BM_DriftDecomposition)->DenseRange(2, 6);

void BM_MaxWPerp(benchmark::State& state) {
  auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 1e-4, 1, 1);
  auto v = to_double(inst.v);
  for (auto _ : state) benchmark::DoNotOptimize(max_w_perp(inst.flow, v));
}
BENCHMARK(BM_MaxWPerp)->DenseRange(2, 6);

// Exact root isolation is used up to block size 3, sampling beyond.
void BM_GoodWindow(benchmark::State& state) {
  auto flow = UnipotentFlow::standard({static_cast<std::size_t>(state.range(0))});
  auto v = random_vector(flow, 1e-4, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(good_window(flow, v, 0.1));
}
BENCHMARK(BM_GoodWindow)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_FromLog(benchmark::State& state) {
  auto flow = UnipotentFlow::standard({3, 2, 1});
  RationalMatrix p = RationalMatrix::identity(6);
  for (std::size_t i = 0; i + 1 < 6; ++i) p(i, i + 1) = 1;
  RationalMatrix n = p * flow.generator_log * p.inverse();
  for (auto _ : state) benchmark::DoNotOptimize(UnipotentFlow::from_log(n));
}
BENCHMARK(BM_FromLog);

}  // namespace

BENCHMARK_MAIN();
