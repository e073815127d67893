// Serial reference against the OpenMP kernels, on the two workloads that are
// embarrassingly parallel: exhaustive Hopf axiom checks and field grids.
#include <benchmark/benchmark.h>

#include "dyson/hopf.hpp"
#include "dyson/ode.hpp"

namespace {

const std::vector<dyson::hopf::Forest>& forests() {
  static const auto f = dyson::hopf::enumerate_forests(5, {1, 2});
  return f;
}

void BM_HopfAxiomsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dyson::hopf::check_axioms_serial(forests()));
  state.counters["forests"] = static_cast<double>(forests().size());
}

void BM_HopfAxiomsParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dyson::hopf::check_axioms_parallel(forests()));
  state.counters["forests"] = static_cast<double>(forests().size());
}

dyson::ode::Grid grid(int n) {
  dyson::ode::Grid g;
  g.nx = g.ny = n;
  return g;
}

void BM_FieldSerial(benchmark::State& state) {
  const auto spec = dyson::ode::OdeSpec::toy(2);
  const auto g = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dyson::ode::emit_field_serial(spec, g));
}

void BM_FieldParallel(benchmark::State& state) {
  const auto spec = dyson::ode::OdeSpec::toy(2);
  const auto g = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dyson::ode::emit_field_parallel(spec, g));
}

}  // namespace

BENCHMARK(BM_HopfAxiomsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HopfAxiomsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FieldParallel)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
