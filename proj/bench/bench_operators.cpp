// Parallel operator kernels against their serial references.

#include <benchmark/benchmark.h>

#include "olab/operators.hpp"

using namespace olab;

namespace {

SampledFunction gaussian(int dim, double h, double extent) {
  return sample_function(GridSpec{dim, h, extent}, {{"type", "gaussian"}, {"scale", 1}});
}

template <bool Parallel>
void maximal_1d(benchmark::State& state) {
  const auto f = gaussian(1, 1.0 / static_cast<double>(state.range(0)), 4);
  OperatorSpec spec;
  spec.alpha = 0.5;
  spec.centered = state.range(1) != 0;
  for (auto _ : state) {
    auto m = Parallel ? maximal(f, spec) : reference::maximal(f, spec);
    benchmark::DoNotOptimize(m.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.grid().size()));
}

template <bool Parallel>
void maximal_2d(benchmark::State& state) {
  const auto f = gaussian(2, 1.0 / static_cast<double>(state.range(0)), 1);
  OperatorSpec spec;
  spec.alpha = 1.0;
  for (auto _ : state) {
    auto m = Parallel ? maximal(f, spec) : reference::maximal(f, spec);
    benchmark::DoNotOptimize(m.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.grid().size()));
}

template <bool Parallel>
void riesz(benchmark::State& state) {
  const auto f = gaussian(static_cast<int>(state.range(0)), 1.0 / static_cast<double>(state.range(1)), 2);
  for (auto _ : state) {
    auto r = Parallel ? riesz_potential(f, 0.5) : reference::riesz_potential(f, 0.5);
    benchmark::DoNotOptimize(r.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.grid().size()));
}

}  // namespace

BENCHMARK(maximal_1d<true>)->Args({16, 1})->Args({32, 1})->Args({16, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(maximal_1d<false>)->Args({16, 1})->Args({32, 1})->Args({16, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(maximal_2d<true>)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(maximal_2d<false>)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(riesz<true>)->Args({1, 64})->Args({2, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(riesz<false>)->Args({1, 64})->Args({2, 8})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
