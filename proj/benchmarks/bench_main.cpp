#include <benchmark/benchmark.h>

#include <random>

#include "mzl/contour.hpp"
#include "mzl/domains.hpp"
#include "mzl/hypergeometric.hpp"
#include "mzl/qseries.hpp"
#include "mzl/verify.hpp"
#include "mzl/weierstrass.hpp"

using namespace mzl;

static void BM_KleinJ(benchmark::State& state) {
  const cplx tau{0.3, 0.6 + 0.4 * state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(klein_j_jet(tau));
}
BENCHMARK(BM_KleinJ)->DenseRange(0, 6, 2);

static void BM_Wp(benchmark::State& state) {
  const auto lat = wp_invariants(1.0);
  const cplx z{0.31, 0.27};
  for (auto _ : state) benchmark::DoNotOptimize(wp_evaluate(z, lat));
}
BENCHMARK(BM_Wp);

static void BM_WpInvariants(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(wp_invariants(1.5));
}
BENCHMARK(BM_WpInvariants);

static void BM_Hyp2f1(benchmark::State& state) {
  const double z = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(hyp2f1_series(1.0 / 6, 5.0 / 6, 1.0, z));
}
BENCHMARK(BM_Hyp2f1)->Arg(10)->Arg(50)->Arg(90)->Arg(99);

static void BM_JInverse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(j_inverse(1e4));
}
BENCHMARK(BM_JInverse);

static void BM_WindingCircle(benchmark::State& state) {
  std::vector<cplx> roots;
  for (int k = 0; k < state.range(0); ++k) roots.push_back(std::polar(0.8, 2.3 * k));
  const AnalyticFn f = [roots](cplx z) {
    cplx v = 1.0, d = 0.0;
    for (cplx r : roots) {
      d = d * (z - r) + v;
      v *= z - r;
    }
    return Jet{v, d, std::abs(v)};
  };
  const auto c = Contour::circle(0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(winding_number(f, c));
}
BENCHMARK(BM_WindingCircle)->Arg(2)->Arg(8)->Arg(32);

static void BM_CountZerosJ(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto p = random_polynomial(rng, 2);
  for (auto _ : state) benchmark::DoNotOptimize(count_zeros_j(p));
}
BENCHMARK(BM_CountZerosJ)->Unit(benchmark::kMillisecond);

static void BM_CountZerosWp(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto p = random_polynomial(rng, 3);
  for (auto _ : state) benchmark::DoNotOptimize(count_zeros_wp(p));
}
BENCHMARK(BM_CountZerosWp)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
