#include <benchmark/benchmark.h>

#include "urnphylo/tree_models.hpp"
#include "urnphylo/urn.hpp"

using namespace urnphylo;

static void BM_YhkGrowth(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    GrowthResult g = generate({Model::YHK, RootKind::Rooted}, PhyloTree::two_leaf(), n, 1, rep++);
    benchmark::DoNotOptimize(g.tree.node_count());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_YhkGrowth)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_PdaGrowth(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    GrowthResult g = generate({Model::PDA, RootKind::Rooted}, PhyloTree::two_leaf(), n, 1, rep++);
    benchmark::DoNotOptimize(g.tree.node_count());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_PdaGrowth)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_UrnSteps(benchmark::State& state) {
  ReplacementMatrix r = ReplacementMatrix::pda();
  for (auto _ : state) {
    UrnState st{{0, 2, 0, 0, 1, 0}};
    RngStream rng = RngStream::for_replicate(1, 0);
    for (int i = 0; i < 10000; ++i) urn_step(st, r, rng);
    benchmark::DoNotOptimize(st.total());
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_UrnSteps);

static void BM_ClassifyAllEdges(benchmark::State& state) {
  GrowthResult g = generate({Model::PDA, RootKind::Rooted}, PhyloTree::two_leaf(),
                            static_cast<std::uint32_t>(state.range(0)), 1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.tree.classify_all_edges().sum());
  }
}
BENCHMARK(BM_ClassifyAllEdges)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
