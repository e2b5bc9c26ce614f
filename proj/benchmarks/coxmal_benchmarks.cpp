#include <benchmark/benchmark.h>

#include "coxmal/coxmal.hpp"

using namespace coxmal;

namespace {

void BM_TowerSample(benchmark::State& state) {
  const auto g = Factor::make(Kind::B, static_cast<int>(state.range(0)));
  const TowerSampler sampler(g, 0.5);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sampler(rng));
}
BENCHMARK(BM_TowerSample)->Arg(50)->Arg(200)->Arg(400);

void BM_TowerSetup(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(TowerSampler(Kind::B, static_cast<int>(state.range(0)), 0.5));
}
BENCHMARK(BM_TowerSetup)->Arg(200);

void BM_LehmerSample(benchmark::State& state) {
  const LehmerSampler sampler(static_cast<int>(state.range(0)) + 1, 0.5);
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(sampler(rng));
}
BENCHMARK(BM_LehmerSample)->Arg(200);

void BM_Length(benchmark::State& state) {
  const auto g = Factor::make(Kind::B, static_cast<int>(state.range(0)));
  const TowerSampler sampler(g, 1.0);
  Rng rng(3);
  const auto w = sampler(rng);
  for (auto _ : state) benchmark::DoNotOptimize(length(w, g));
}
BENCHMARK(BM_Length)->Arg(32)->Arg(200)->Arg(2000);

void BM_TwoSidedDescent(benchmark::State& state) {
  const auto g = Factor::make(Kind::B, static_cast<int>(state.range(0)));
  const TowerSampler sampler(g, 1.0);
  Rng rng(4);
  const auto w = sampler(rng);
  for (auto _ : state) benchmark::DoNotOptimize(two_sided_descent(w, g));
}
BENCHMARK(BM_TwoSidedDescent)->Arg(200);

void BM_CovarianceTypeSums(benchmark::State& state) {
  const auto g = Factor::make(Kind::B, 4);
  for (auto _ : state) benchmark::DoNotOptimize(covariance_type_sums(g, 0.5));
}
BENCHMARK(BM_CovarianceTypeSums)->Unit(benchmark::kMillisecond);

void BM_Wasserstein(benchmark::State& state) {
  const auto law = NormalizedStatistic::standardize(exact_distribution(Factor::make(Kind::B, 4), 1.0));
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein_p_to_normal(law, p));
}
BENCHMARK(BM_Wasserstein)->Arg(1)->Arg(2);

void BM_W1ByCdfDifference(benchmark::State& state) {
  const auto law = NormalizedStatistic::standardize(exact_distribution(Factor::make(Kind::B, 4), 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein1_by_cdf_difference(law));
}
BENCHMARK(BM_W1ByCdfDifference);

}  // namespace

BENCHMARK_MAIN();
