#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wlrni/datagen.hpp"
#include "wlrni/graph.hpp"
#include "wlrni/linalg.hpp"
#include "wlrni/rni.hpp"
#include "wlrni/rng.hpp"

namespace wlrni {

enum class Activation { ELU, Tanh };

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelConfig {
  int layers = 8;
  int d = 64;
  Activation activation = Activation::ELU;
  double rni_fraction = 0.0;
  InitScheme scheme = InitScheme::Normal01;
  double lr = 1e-4;
  int epochs = 500;
  int folds = 10;
  std::uint64_t seed = 0;
  int jobs = 1;
  // readout is coordinatewise max; head is affine d->d, d->32, 32->2

  int d_det() const { return d - num_random_columns(d, rni_fraction); }
  void validate() const;
};

struct LayerParams {
  Matrix w_self;   // d x d, applied on the right
  Matrix w_neigh;  // d x d
  Matrix w_read;   // d x d
  Matrix bias;     // 1 x d
};

struct ModelParams {
  std::vector<LayerParams> layers;
  Matrix type_embedding;  // 2 x d_det
  Matrix head1_w, head1_b;
  Matrix head2_w, head2_b;
  Matrix head3_w, head3_b;

  // Glorot-uniform weights, zero biases; the type embedding is treated as an
  // affine map from the one-hot node type.
  static ModelParams init(const ModelConfig& config, Rng& rng);
  static ModelParams zeros_like(const ModelParams& shape);

  std::vector<Matrix*> tensors();
  std::vector<const Matrix*> tensors() const;
  bool all_finite() const;
};

struct ForwardCache {
  std::vector<Matrix> h;          // layers+1 node-state matrices, h[0] = input
  std::vector<Matrix> neigh;      // per layer, sorted neighbor sums of h[t]
  std::vector<Matrix> mean;       // per layer, 1 x d global mean of h[t]
  std::vector<int> argmax;        // readout winner per coordinate
  Matrix pooled, u1, u2;          // readout and post-activation head states
};

// ACR layer: h' = act(h*W_self + sum_neigh(h)*W_neigh + mean(h)*W_read + b),
// repeated `layers` times, then coordinatewise max readout and the MLP head.
// All aggregations accumulate in sorted order, so node states over equal
// multisets are bitwise equal; that makes the network exactly permutation
// invariant and pins 1-WL-indistinguishable pairs to identical logits.
// Returns raw logits. Throws NumericError (with layer index) on non-finite
// intermediates and std::invalid_argument on shape mismatch or empty graphs.
std::array<double, 2> forward(const TypedGraph& g, const Matrix& features,
                              const ModelParams& params, Activation activation,
                              ForwardCache* cache = nullptr);

struct BatchItem {
  const TypedGraph* graph;
  const Matrix* features;
  int label;  // 0 or 1
};

// Mean softmax cross-entropy over the batch plus exact reverse-mode gradients
// (accumulated into `grads`, which must be zeros_like the params). The max
// readout routes its subgradient to the lowest node index achieving the max.
double loss_and_grad(std::span<const BatchItem> batch, const ModelParams& params,
                     Activation activation, ModelParams& grads,
                     std::vector<std::array<double, 2>>* logits_out = nullptr);

struct AdamState {
  ModelParams m, v;
  long long t = 0;

  static AdamState zeros_like(const ModelParams& shape);
};

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               double lr, double beta1 = 0.9, double beta2 = 0.999,
               double eps = 1e-8);

// Training input: both graphs of a pair always travel together.
struct DataPair {
  int pair_id = 0;
  Subset subset = Subset::Exp;
  TypedGraph sat_graph;
  TypedGraph unsat_graph;
};

std::vector<DataPair> to_data_pairs(const std::vector<GraphPair>& pairs);

struct EpochStat {
  int epoch = 0;
  double train_loss = 0.0;
  double train_acc = 0.0;
  double test_acc = 0.0;
  double test_acc_exp = -1.0;      // -1 when the subset is absent
  double test_acc_corrupt = -1.0;
  double max_pair_gap = -1.0;  // max over test pairs of |logits(G)-logits(H)|_inf
};

struct FoldRecord {
  int fold = 0;
  std::uint64_t seed = 0;
  std::vector<EpochStat> epochs;
  double final_test_acc = 0.0;
  double final_test_acc_exp = -1.0;
  double final_test_acc_corrupt = -1.0;
  double wall_seconds = 0.0;
};

struct TrainRecord {
  ModelConfig config;
  std::vector<FoldRecord> folds;
  double mean_final_acc = 0.0;
  double std_final_acc = 0.0;
  std::vector<double> epoch_acc_mean;  // test accuracy across folds, per epoch
  std::vector<double> epoch_acc_std;
  double wall_seconds = 0.0;
};

// One training run: per epoch, iterate training graphs in seeded shuffled
// order, resample RNI features per graph, take one Adam step per graph;
// training accuracy is collected from the pre-update predictions and test
// accuracy from a fresh-draw evaluation pass each epoch.
FoldRecord train_fold(const std::vector<DataPair>& train_pairs,
                      const std::vector<DataPair>& test_pairs,
                      const ModelConfig& config, int fold_index = 0);

// Pair-level k-fold cross-validation (seeded shuffle, round-robin fold
// assignment). `max_folds` > 0 trains only the first folds, for single-split
// runs. Folds run in parallel when config.jobs > 1; results are identical
// either way.
TrainRecord cross_validate(const std::vector<DataPair>& pairs,
                           const ModelConfig& config, int max_folds = -1);

// Line-delimited metrics: per-epoch train/test rows per fold, cross-fold
// mean/std rows, and a summary block.
void write_metrics(const TrainRecord& record, const std::string& path,
                   bool include_timestamp);
std::string metrics_to_string(const TrainRecord& record, bool include_timestamp);

}  // namespace wlrni
