#include <benchmark/benchmark.h>

#include "graphcx/ensemble.hpp"
#include "graphcx/measures.hpp"
#include "graphcx/relabel_sweep.hpp"

using namespace graphcx;

namespace {

void BM_RelabelingSweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = er_random(n, 0.5, 3);
  RelabelingSweep sweep(n, GrammarVariant::implicit_final_len);
  for (auto _ : state) {
    RelabelingTally tally;
    sweep.run(g, tally);
    benchmark::DoNotOptimize(tally.counts.data());
  }
}
BENCHMARK(BM_RelabelingSweep)->Arg(7)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_ClassSweep(benchmark::State& state) {
  const auto links = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(zcomplexity_class_sweep(10, links, GrammarVariant::implicit_final_len));
}
BENCHMARK(BM_ClassSweep)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_graphs(n));
}
BENCHMARK(BM_Enumerate)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace
