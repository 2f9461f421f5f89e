#include <benchmark/benchmark.h>

#include "lcgeom/presets.hpp"
#include "lcgeom/verify.hpp"

using namespace lcg;

static void BM_ProjectionProduct2D(benchmark::State& state) {
  const Body K = preset_body(state.range(0) == 0 ? "triangle" : "disk");
  for (auto _ : state) benchmark::DoNotOptimize(projection_product(K));
}
BENCHMARK(BM_ProjectionProduct2D)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ProjectionProduct3D(benchmark::State& state) {
  const Body K = preset_body("cube");
  for (auto _ : state) benchmark::DoNotOptimize(projection_product(K));
}
BENCHMARK(BM_ProjectionProduct3D)->Unit(benchmark::kMillisecond);

static void BM_BodyCovariogram(benchmark::State& state) {
  const Body K = preset_body("simplex2");
  const Vec x(0.3, -0.2);
  for (auto _ : state) benchmark::DoNotOptimize(covariogram_body(K, x));
}
BENCHMARK(BM_BodyCovariogram);

static void BM_CovariogramFn(benchmark::State& state) {
  const LogConcaveFunction f = parse_function("expnorm:square");
  const Vec x(0.4, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(covariogram_fn(f, x));
}
BENCHMARK(BM_CovariogramFn)->Unit(benchmark::kMicrosecond);

static void BM_PhiGamma(benchmark::State& state) {
  const MomentProfile gamma = MomentProfile::power(0.5);
  const double p = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(phi_gamma(gamma, p));
}
BENCHMARK(BM_PhiGamma)->Arg(-5)->Arg(0)->Arg(20)->Unit(benchmark::kMicrosecond);

static void BM_EpigraphMoment(benchmark::State& state) {
  const Epigraph L(parse_function("gaussian:2"));
  const ConcaveWitness h = parse_witness("chord:e1", 2);
  for (auto _ : state) benchmark::DoNotOptimize(berwald_epigraph(L, h, 1.0));
}
BENCHMARK(BM_EpigraphMoment)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
