#include <benchmark/benchmark.h>

#include "fbq/dynamics.hpp"

namespace {

fbq::SpectralField field(int n) { return fbq::random_bandlimited(fbq::Grid(n), 1, 1.0, 8.0, 1.0); }

void BM_Forward(benchmark::State& state) {
  const auto x = fbq::inverse(field(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(fbq::forward(x));
}
BENCHMARK(BM_Forward)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMicrosecond);

void BM_Inverse(benchmark::State& state) {
  const auto f = field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fbq::inverse(f));
}
BENCHMARK(BM_Inverse)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMicrosecond);

void BM_InversePair(benchmark::State& state) {
  const auto f = field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fbq::inverse_pair(f, f));
}
BENCHMARK(BM_InversePair)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMicrosecond);

void BM_BiotSavart(benchmark::State& state) {
  const auto f = field(static_cast<int>(state.range(0)));
  fbq::ParamSet p;
  p.gamma = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(fbq::biot_savart(f, p));
}
BENCHMARK(BM_BiotSavart)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_Dealias(benchmark::State& state) {
  const auto f = field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fbq::dealias(f));
}
BENCHMARK(BM_Dealias)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace
