#include <benchmark/benchmark.h>

#include "meanlab/catalog.hpp"
#include "meanlab/dsl.hpp"
#include "meanlab/gauss.hpp"
#include "meanlab/sampling.hpp"

namespace {

using namespace meanlab;

void BM_GeneralizedMean(benchmark::State& state) {
  const auto s = catalog::systems()[static_cast<std::size_t>(state.range(0))];
  SampleStream rng(1, 0);
  const auto x = rng.point(s.system.domain(), s.system.size());
  for (auto _ : state) benchmark::DoNotOptimize(gqam_eval(s.system, x));
  state.SetLabel(s.name);
}
BENCHMARK(BM_GeneralizedMean)->DenseRange(0, 4);

void BM_GaussIteration(benchmark::State& state) {
  const auto s = catalog::systems()[static_cast<std::size_t>(state.range(0))];
  const MeanTypeMapping mapping = cyclic_mapping(means::generalized_quasi_arithmetic(s.system));
  SampleStream rng(2, 0);
  const auto x = rng.point(s.system.domain(), s.system.size());
  for (auto _ : state) benchmark::DoNotOptimize(gauss_iterate(mapping, x).limit);
  state.SetLabel(s.name);
}
BENCHMARK(BM_GaussIteration)->DenseRange(0, 4);

void BM_Inversion(benchmark::State& state) {
  const Generator g = catalog::generators()[static_cast<std::size_t>(state.range(0))].generator;
  const double y = g(g.domain().grid_point(100, 256));
  for (auto _ : state) benchmark::DoNotOptimize(g.invert(y));
}
BENCHMARK(BM_Inversion)->DenseRange(0, 6);

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dsl::parse("2 * exp(x / 3) + log(x + 1) - x^2 / 7"));
}
BENCHMARK(BM_Parse);

}  // namespace
BENCHMARK_MAIN();
