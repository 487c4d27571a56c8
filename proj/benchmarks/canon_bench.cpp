#include <benchmark/benchmark.h>

#include <random>

#include "graphcx/canon.hpp"
#include "graphcx/ensemble.hpp"

using namespace graphcx;

namespace {

void BM_CanonicalLabeling(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Graph> graphs;
  for (std::uint64_t s = 0; s < 64; ++s) graphs.push_back(er_random(n, 0.5, s));
  Canonizer canon;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canon.run(graphs[i++ % graphs.size()]));
}
BENCHMARK(BM_CanonicalLabeling)->Arg(8)->Arg(10)->Arg(16)->Arg(32)->Arg(64);

// Highly symmetric inputs stress automorphism pruning.
void BM_CanonicalLabelingCycle(benchmark::State& state) {
  const Graph g = cycle_graph(static_cast<std::size_t>(state.range(0)));
  Canonizer canon;
  for (auto _ : state) benchmark::DoNotOptimize(canon.run(g));
}
BENCHMARK(BM_CanonicalLabelingCycle)->Arg(10)->Arg(32)->Arg(64);

void BM_CanonicalWord(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::uint64_t> words(256);
  for (auto& w : words) w = rng() & ((std::uint64_t{1} << 45) - 1);
  Canonizer canon;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canon.canonical_word(10, words[i++ % words.size()]));
}
BENCHMARK(BM_CanonicalWord);

}  // namespace
