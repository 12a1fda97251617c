#include <benchmark/benchmark.h>

#include "rrdt/local_sampler.hpp"

namespace {

void BM_SampleVmf(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  rrdt::RandomStream rng(6);
  rrdt::DirectionDistribution dist{rrdt::uniform_direction(d, rng), static_cast<double>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(rrdt::sample_vmf(dist, rng));
}
BENCHMARK(BM_SampleVmf)->ArgsProduct({{2, 3, 6}, {0, 2, 50}});

}  // namespace
