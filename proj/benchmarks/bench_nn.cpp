#include <benchmark/benchmark.h>

#include "wlrni/datagen.hpp"
#include "wlrni/nn.hpp"

namespace {

using namespace wlrni;

struct Setup {
  TypedGraph graph;
  ModelConfig config;
  ModelParams params;
  Matrix features;

  explicit Setup(double rni_fraction) {
    Rng grng = Rng::from_seed(5);
    GraphPair pair = gen_exp_pair(3, 12, grng);
    graph = pair.sat_graph;
    config.layers = 8;
    config.d = 64;
    config.rni_fraction = rni_fraction;
    Rng rng = Rng::from_seed(6);
    params = ModelParams::init(config, rng);
    features = init_features(graph, config.d, rni_fraction, config.scheme,
                             params.type_embedding, rng);
  }
};

void BM_Forward(benchmark::State& state) {
  Setup s(1.0);
  for (auto _ : state) {
    auto logits = forward(s.graph, s.features, s.params, Activation::ELU);
    benchmark::DoNotOptimize(logits[0]);
  }
  state.counters["nodes"] = s.graph.num_nodes();
}
BENCHMARK(BM_Forward);

void BM_LossAndGrad(benchmark::State& state) {
  Setup s(1.0);
  ModelParams grads = ModelParams::zeros_like(s.params);
  BatchItem item{&s.graph, &s.features, 1};
  for (auto _ : state) {
    for (Matrix* t : grads.tensors()) t->fill(0.0);
    benchmark::DoNotOptimize(
        loss_and_grad({&item, 1}, s.params, Activation::ELU, grads));
  }
}
BENCHMARK(BM_LossAndGrad);

void BM_AdamStep(benchmark::State& state) {
  Setup s(1.0);
  ModelParams grads = ModelParams::zeros_like(s.params);
  BatchItem item{&s.graph, &s.features, 1};
  loss_and_grad({&item, 1}, s.params, Activation::ELU, grads);
  AdamState opt = AdamState::zeros_like(s.params);
  for (auto _ : state) {
    adam_step(s.params, grads, opt, 1e-4);
    benchmark::DoNotOptimize(s.params.head3_b.at(0, 0));
  }
}
BENCHMARK(BM_AdamStep);

void BM_InitFeatures(benchmark::State& state) {
  Setup s(0.5);
  Rng rng = Rng::from_seed(7);
  for (auto _ : state) {
    Matrix f = init_features(s.graph, s.config.d, 0.5, InitScheme::Normal01,
                             s.params.type_embedding, rng);
    benchmark::DoNotOptimize(f.at(0, 0));
  }
}
BENCHMARK(BM_InitFeatures);

}  // namespace

BENCHMARK_MAIN();
