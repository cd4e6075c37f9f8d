#include <benchmark/benchmark.h>

#include "fbq/besov.hpp"
#include "fbq/dynamics.hpp"
#include "fbq/oracle.hpp"
#include "fbq/regions.hpp"

namespace {

void BM_BesovNorm(benchmark::State& st) {
  const auto f = fbq::random_bandlimited(fbq::Grid(static_cast<int>(st.range(0))), 1, 1.0, 8.0, 1.0);
  fbq::BesovSpec spec;
  spec.s = 0.05;
  spec.p = st.range(1) == 0 ? fbq::kInf : static_cast<double>(st.range(1));
  spec.q = 1.0;
  for (auto _ : st) benchmark::DoNotOptimize(fbq::besov_norm(f, spec));
}
// p = 2 goes through Parseval, p = inf through block syntheses.
BENCHMARK(BM_BesovNorm)->Args({128, 2})->Args({128, 0})->Args({256, 2})->Args({256, 0})->Unit(benchmark::kMillisecond);

void BM_DyadicBlock(benchmark::State& st) {
  const auto f = fbq::random_bandlimited(fbq::Grid(256), 1, 1.0, 8.0, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(fbq::dyadic_block(f, 4));
}
BENCHMARK(BM_DyadicBlock)->Unit(benchmark::kMicrosecond);

void BM_Oracle(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(fbq::oracle_check());
}
BENCHMARK(BM_Oracle)->Unit(benchmark::kMillisecond);

void BM_NestingSweep(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(fbq::nesting_sweep(200));
}
BENCHMARK(BM_NestingSweep)->Unit(benchmark::kMillisecond);

}  // namespace
