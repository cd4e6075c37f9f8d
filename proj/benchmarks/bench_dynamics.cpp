#include <benchmark/benchmark.h>

#include "fbq/diagnostics.hpp"

namespace {

fbq::SimState state(int n) {
  const fbq::Grid g(n);
  return {0.0, fbq::random_bandlimited(g, 1, 1.0, 4.0, 1.0), fbq::random_bandlimited(g, 2, 1.0, 4.0, 1.0), {}};
}

void BM_Nonlinear(benchmark::State& st) {
  const auto s = state(static_cast<int>(st.range(0)));
  const fbq::Dynamics dyn(s.omega.grid, s.params);
  for (auto _ : st) benchmark::DoNotOptimize(dyn.nonlinear(s));
}
BENCHMARK(BM_Nonlinear)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_StepRK4(benchmark::State& st) {
  const auto s = state(static_cast<int>(st.range(0)));
  const fbq::Dynamics dyn(s.omega.grid, s.params);
  for (auto _ : st) benchmark::DoNotOptimize(dyn.step(s, {fbq::SchemeKind::if_rk4, 1e-3}));
}
BENCHMARK(BM_StepRK4)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Record(benchmark::State& st) {
  const auto s = state(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(fbq::snapshot_record(s, {}));
}
BENCHMARK(BM_Record)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EnergyBalance(benchmark::State& st) {
  const auto s = state(128);
  const auto next = fbq::step(s, {fbq::SchemeKind::if_rk4, 1e-3});
  for (auto _ : st) benchmark::DoNotOptimize(fbq::energy_balance(s, next));
}
BENCHMARK(BM_EnergyBalance)->Unit(benchmark::kMillisecond);

void BM_TwinFunctional(benchmark::State& st) {
  const auto a = state(128);
  auto b = a;
  b.theta += 1e-6 * fbq::random_bandlimited(a.theta.grid, 3, 1.0, 4.0, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(fbq::twin_functional(a, b));
}
BENCHMARK(BM_TwinFunctional)->Unit(benchmark::kMillisecond);

}  // namespace
