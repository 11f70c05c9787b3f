#include <benchmark/benchmark.h>

#include "wlrni/datagen.hpp"
#include "wlrni/logic.hpp"

namespace {

using namespace wlrni;

void BM_SolveCorePair(benchmark::State& state) {
  auto [unsat_core, sat_core] = make_core_pair(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_sat(unsat_core).satisfiable);
    benchmark::DoNotOptimize(solve_sat(sat_core).satisfiable);
  }
}
BENCHMARK(BM_SolveCorePair)->Arg(2)->Arg(4)->Arg(8);

void BM_SolveFullFormula(benchmark::State& state) {
  Rng rng = Rng::from_seed(3);
  GraphPair pair = gen_exp_pair(4, 15, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_sat(pair.unsat_formula).satisfiable);
  state.counters["vars"] = pair.unsat_formula.num_vars;
}
BENCHMARK(BM_SolveFullFormula);

void BM_BruteforceOracle(benchmark::State& state) {
  auto [unsat_core, sat_core] = make_core_pair(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_sat_bruteforce(unsat_core).satisfiable);
}
BENCHMARK(BM_BruteforceOracle)->Arg(2)->Arg(6);

void BM_PlanarComponent(benchmark::State& state) {
  Rng rng = Rng::from_seed(9);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        gen_planar_component(static_cast<int>(state.range(0)), rng).num_vars);
}
BENCHMARK(BM_PlanarComponent)->Arg(12)->Arg(15);

}  // namespace

BENCHMARK_MAIN();
