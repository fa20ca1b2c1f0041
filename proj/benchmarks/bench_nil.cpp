#include <benchmark/benchmark.h>

#include <random>

#include "nilrigid/nil/group.hpp"

using namespace nilrigid;
using namespace nilrigid::nil;

namespace {

NilAlgebra free3() {
  return NilAlgebra(5, {{0, 1, {{2, Rational(1)}}}, {0, 2, {{3, Rational(1)}}}, {1, 2, {{4, Rational(1)}}}});
}

Vec random_vec(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> num(-99, 99), den(1, 16);
  Vec v(d);
  for (auto& x : v) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return v;
}

void BM_BchFree3(benchmark::State& state) {
  NilAlgebra g = free3();
  std::mt19937_64 rng(1);
  Vec a = random_vec(rng, 5), b = random_vec(rng, 5);
  for (auto _ : state) benchmark::DoNotOptimize(bch(g, a, b));
}
BENCHMARK(BM_BchFree3);

void BM_BchHeisenberg(benchmark::State& state) {
  NilAlgebra h = NilAlgebra::heisenberg(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(2);
  Vec a = random_vec(rng, h.dim()), b = random_vec(rng, h.dim());
  for (auto _ : state) benchmark::DoNotOptimize(bch(h, a, b));
}
BENCHMARK(BM_BchHeisenberg)->Arg(1)->Arg(6);

void BM_BchDouble(benchmark::State& state) {
  NilAlgebra g = free3();
  std::vector<double> a{0.1, -0.3, 0.2, 0.7, -0.4}, b{0.5, 0.25, -0.1, 0.3, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(bch(g, a, b));
}
BENCHMARK(BM_BchDouble);

void BM_ReduceFundamental(benchmark::State& state) {
  NilAlgebra g = free3();
  std::mt19937_64 rng(3);
  Vec p = random_vec(rng, 5);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_fundamental(g, p));
}
BENCHMARK(BM_ReduceFundamental);

void BM_LowerCentralSeries(benchmark::State& state) {
  NilAlgebra g = free3();
  for (auto _ : state) benchmark::DoNotOptimize(lower_central_series(g));
}
BENCHMARK(BM_LowerCentralSeries);

}  // namespace

BENCHMARK_MAIN();
