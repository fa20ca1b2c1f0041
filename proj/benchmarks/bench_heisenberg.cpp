#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "nilrigid/heisenberg/group.hpp"
#include "nilrigid/heisenberg/katok.hpp"
#include "nilrigid/heisenberg/measure.hpp"
#include "nilrigid/heisenberg/plane.hpp"

using namespace nilrigid;
using namespace nilrigid::heisenberg;

namespace {

const KatokPair& pair() {
  static const KatokPair p = load_katok(std::string(NILRIGID_FIXTURES_DIR) + "/katok_pair.json");
  return p;
}

std::vector<Rational> random_point(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-999, 999), den(1, 64);
  std::vector<Rational> p(13);
  for (auto& x : p) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return p;
}

void BM_HeisMultiply(benchmark::State& state) {
  auto p = random_point(1), q = random_point(2);
  for (auto _ : state) benchmark::DoNotOptimize(heis_multiply(p, q));
}
BENCHMARK(BM_HeisMultiply);

void BM_HeisReduce(benchmark::State& state) {
  auto p = random_point(3);
  for (auto _ : state) benchmark::DoNotOptimize(heis_reduce(p));
}
BENCHMARK(BM_HeisReduce);

void BM_VerifyKatokPair(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_katok_pair(pair().A, pair().B));
}
BENCHMARK(BM_VerifyKatokPair)->Unit(benchmark::kMillisecond);

// One sample against the whole n-box; includes the per-call setup of the 121 matrices.
void BM_EquivariancePerSample(benchmark::State& state) {
  auto alpha = build_action(pair());
  auto circle = make_circle(pair(), 512);
  auto samples = sample_mu(1, 1);
  const long bits = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(check_equivariance(pair(), alpha, circle, samples, 5, bits, 1));
}
BENCHMARK(BM_EquivariancePerSample)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_CompactnessScan(benchmark::State& state) {
  auto circle = make_circle(pair(), 256);
  auto samples = sample_mu(1, 100);
  for (auto _ : state) benchmark::DoNotOptimize(compactness_scan(circle, samples, Integer(1000000), 128, 1));
}
BENCHMARK(BM_CompactnessScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
