#include <benchmark/benchmark.h>

#include "wlrni/datagen.hpp"
#include "wlrni/wl.hpp"

namespace {

using namespace wlrni;

GraphPair sample_pair(int n) {
  Rng rng = Rng::from_seed(1);
  return gen_exp_pair(n, 12, rng);
}

void BM_Wl1Refine(benchmark::State& state) {
  GraphPair pair = sample_pair(static_cast<int>(state.range(0)));
  TypedGraph u = disjoint_union(pair.sat_graph, pair.unsat_graph);
  for (auto _ : state) {
    Coloring col = wl1_refine(u);
    benchmark::DoNotOptimize(col.num_colors);
  }
  state.counters["nodes"] = u.num_nodes();
}
BENCHMARK(BM_Wl1Refine)->Arg(2)->Arg(4);

void BM_Fwl2Refine(benchmark::State& state) {
  GraphPair pair = sample_pair(static_cast<int>(state.range(0)));
  TypedGraph u = disjoint_union(pair.sat_graph, pair.unsat_graph);
  for (auto _ : state) {
    PairColoring col = fwl2_refine(u);
    benchmark::DoNotOptimize(col.num_colors);
  }
  state.counters["nodes"] = u.num_nodes();
}
BENCHMARK(BM_Fwl2Refine)->Arg(2)->Arg(4);

void BM_ValidatePair(benchmark::State& state) {
  GraphPair pair = sample_pair(3);
  for (auto _ : state) {
    PairFlags flags = validate_pair(pair);
    benchmark::DoNotOptimize(flags.sat_labels_ok);
  }
}
BENCHMARK(BM_ValidatePair);

void BM_Isomorphism(benchmark::State& state) {
  GraphPair pair = sample_pair(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(are_isomorphic(pair.sat_graph, pair.unsat_graph));
}
BENCHMARK(BM_Isomorphism);

}  // namespace

BENCHMARK_MAIN();
