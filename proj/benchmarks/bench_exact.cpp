#include <benchmark/benchmark.h>

#include <random>

#include "nilrigid/exact/factor.hpp"
#include "nilrigid/exact/linalg.hpp"
#include "nilrigid/exact/roots.hpp"

using namespace nilrigid;
using namespace nilrigid::exact;

namespace {

RationalMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(-9, 9);
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

void BM_Charpoly(benchmark::State& state) {
  RationalMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(charpoly(m));
}
BENCHMARK(BM_Charpoly)->Arg(4)->Arg(6)->Arg(13);

void BM_Determinant(benchmark::State& state) {
  RationalMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(m.determinant());
}
BENCHMARK(BM_Determinant)->Arg(6)->Arg(13);

void BM_FactorCharpoly(benchmark::State& state) {
  IntPolynomial p = charpoly(random_matrix(static_cast<std::size_t>(state.range(0)), 3));
  for (auto _ : state) benchmark::DoNotOptimize(factor_rational(p));
}
BENCHMARK(BM_FactorCharpoly)->Arg(6)->Arg(10);

void BM_IsolateRoots(benchmark::State& state) {
  // Characteristic polynomial of the fixture matrix A.
  IntPolynomial p(std::vector<Integer>{1, -1, -2, 1, -2, -1, 1});
  const long bits = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(isolate_roots(p, bits));
}
BENCHMARK(BM_IsolateRoots)->Arg(128)->Arg(512);

void BM_SmithForm(benchmark::State& state) {
  RationalMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithForm)->Arg(6)->Arg(13);

}  // namespace

BENCHMARK_MAIN();
