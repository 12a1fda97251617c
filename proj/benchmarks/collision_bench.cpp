#include <benchmark/benchmark.h>

#include "rrdt/environment.hpp"
#include "rrdt/maps.hpp"

namespace {

void BM_SegmentFree(benchmark::State& state) {
  const rrdt::Environment env = rrdt::make_bundled_map(rrdt::BundledMap::clutter);
  const double len = static_cast<double>(state.range(0));
  rrdt::RandomStream rng(4);
  for (auto _ : state) {
    const auto a = env.sample_free(rng).q;
    const double th = rng.uniform(0, 6.283185307179586);
    const rrdt::Configuration b{a[0] + len * std::cos(th), a[1] + len * std::sin(th)};
    benchmark::DoNotOptimize(env.segment_free(a, b, 0.5));
  }
}
BENCHMARK(BM_SegmentFree)->Arg(8)->Arg(32)->Arg(128);

void BM_SampleFree(benchmark::State& state) {
  const rrdt::Environment env = rrdt::make_bundled_map(rrdt::BundledMap::clutter);
  rrdt::RandomStream rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(env.sample_free(rng));
}
BENCHMARK(BM_SampleFree);

}  // namespace
