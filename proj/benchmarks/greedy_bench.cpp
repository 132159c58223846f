#include <benchmark/benchmark.h>

#include "polytree/gen.hpp"
#include "polytree/greedy.hpp"
#include "polytree/oracle.hpp"

namespace {

polytree::Instance bench_instance(std::size_t n, bool additive) {
  polytree::GenConfig cfg;
  cfg.n = n;
  cfg.sets_per_node = 8;
  cfg.max_parent_size = additive ? 1 : 3;
  cfg.additive = additive;
  cfg.seed = 7 * n + additive;
  return polytree::random_instance(cfg);
}

void BM_GreedyParentSets(benchmark::State& state) {
  const auto inst = bench_instance(static_cast<std::size_t>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(polytree::greedy_parent_sets(inst).score);
}

void BM_GreedyDensity(benchmark::State& state) {
  const auto inst = bench_instance(static_cast<std::size_t>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(polytree::greedy_density_comp(inst, 3).score);
}

void BM_GreedyArcsAdditive(benchmark::State& state) {
  const auto inst = bench_instance(static_cast<std::size_t>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(polytree::greedy_arcs_additive(inst, 2).score);
}

void BM_ForestAdditive(benchmark::State& state) {
  const auto inst = bench_instance(static_cast<std::size_t>(state.range(0)), true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polytree::max_weight_forest_additive(inst).score);
  }
}

}  // namespace

BENCHMARK(BM_GreedyParentSets)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_GreedyDensity)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_GreedyArcsAdditive)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_ForestAdditive)->RangeMultiplier(2)->Range(16, 256);
