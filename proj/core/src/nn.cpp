#include "wlrni/nn.hpp"

#include <algorithm>
#include <cmath>

namespace wlrni {

void ModelConfig::validate() const {
  if (layers < 1) throw std::invalid_argument("layers must be >= 1");
  if (d < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  if (lr <= 0.0) throw std::invalid_argument("learning rate must be positive");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (folds < 2) throw std::invalid_argument("folds must be >= 2");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (rni_fraction < 0.0 || rni_fraction > 1.0)
    throw std::invalid_argument("rni_fraction must lie in [0,1]");
}

namespace {

constexpr int kHeadHidden = 32;
constexpr int kClasses = 2;

Matrix glorot_uniform(int rows, int cols, Rng& rng, int fan_in = -1,
                      int fan_out = -1) {
  Matrix w(rows, cols);
  if (fan_in < 0) fan_in = rows;
  if (fan_out < 0) fan_out = cols;
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  for (double& v : w.data()) v = rng.uniform(-limit, limit);
  return w;
}

inline double act_forward(Activation a, double x) {
  if (a == Activation::ELU) return x > 0.0 ? x : std::expm1(x);
  return std::tanh(x);
}

// Derivative expressed through the activation's output value.
inline double act_backward_from_output(Activation a, double y) {
  if (a == Activation::ELU) return y > 0.0 ? 1.0 : y + 1.0;
  return 1.0 - y * y;
}

void apply_activation(Activation a, Matrix& m) {
  for (double& v : m.data()) v = act_forward(a, v);
}

// Sorted per-coordinate neighbor sums: equal multisets of neighbor states
// give bitwise-equal rows.
void neighbor_sums_sorted(const TypedGraph& g, const Matrix& h, Matrix& out) {
  out = Matrix(h.rows(), h.cols());
  const int d = h.cols();
  std::vector<const double*> rows;
  std::vector<double> buf;
  for (int v = 0; v < g.num_nodes(); ++v) {
    const auto& nb = g.neighbors(v);
    if (nb.empty()) continue;
    rows.clear();
    for (int u : nb) rows.push_back(h.row(u));
    buf.resize(rows.size());
    double* orow = out.row(v);
    for (int j = 0; j < d; ++j) {
      for (std::size_t r = 0; r < rows.size(); ++r) buf[r] = rows[r][j];
      std::sort(buf.begin(), buf.end());
      double s = 0.0;
      for (double x : buf) s += x;
      orow[j] = s;
    }
  }
}

// Plain adjacency aggregation for the backward pass (order fixed by the
// graph, so training stays deterministic).
void neighbor_sums_plain(const TypedGraph& g, const Matrix& x, Matrix& out) {
  out = Matrix(x.rows(), x.cols());
  const int d = x.cols();
  for (int v = 0; v < g.num_nodes(); ++v) {
    double* orow = out.row(v);
    for (int u : g.neighbors(v)) {
      const double* xrow = x.row(u);
      for (int j = 0; j < d; ++j) orow[j] += xrow[j];
    }
  }
}

void check_finite(const Matrix& m, const std::string& where) {
  if (!m.all_finite())
    throw NumericError("non-finite intermediate at " + where);
}

struct HeadOut {
  std::array<double, 2> logits;
};

}  // namespace

ModelParams ModelParams::init(const ModelConfig& config, Rng& rng) {
  config.validate();
  ModelParams p;
  const int d = config.d;
  for (int l = 0; l < config.layers; ++l) {
    // One affine map per layer over the concatenated [self, neighbor-sum,
    // readout] inputs, so the Glorot fan-in is 3d.
    LayerParams layer;
    layer.w_self = glorot_uniform(d, d, rng, 3 * d, d);
    layer.w_neigh = glorot_uniform(d, d, rng, 3 * d, d);
    layer.w_read = glorot_uniform(d, d, rng, 3 * d, d);
    layer.bias = Matrix(1, d);
    p.layers.push_back(std::move(layer));
  }
  const int d_det = config.d_det();
  p.type_embedding = d_det > 0 ? glorot_uniform(2, d_det, rng) : Matrix(2, 0);
  p.head1_w = glorot_uniform(d, d, rng);
  p.head1_b = Matrix(1, d);
  p.head2_w = glorot_uniform(d, kHeadHidden, rng);
  p.head2_b = Matrix(1, kHeadHidden);
  p.head3_w = glorot_uniform(kHeadHidden, kClasses, rng);
  p.head3_b = Matrix(1, kClasses);
  return p;
}

ModelParams ModelParams::zeros_like(const ModelParams& shape) {
  ModelParams p;
  for (const LayerParams& l : shape.layers) {
    LayerParams z;
    z.w_self = Matrix(l.w_self.rows(), l.w_self.cols());
    z.w_neigh = Matrix(l.w_neigh.rows(), l.w_neigh.cols());
    z.w_read = Matrix(l.w_read.rows(), l.w_read.cols());
    z.bias = Matrix(l.bias.rows(), l.bias.cols());
    p.layers.push_back(std::move(z));
  }
  p.type_embedding = Matrix(shape.type_embedding.rows(), shape.type_embedding.cols());
  p.head1_w = Matrix(shape.head1_w.rows(), shape.head1_w.cols());
  p.head1_b = Matrix(shape.head1_b.rows(), shape.head1_b.cols());
  p.head2_w = Matrix(shape.head2_w.rows(), shape.head2_w.cols());
  p.head2_b = Matrix(shape.head2_b.rows(), shape.head2_b.cols());
  p.head3_w = Matrix(shape.head3_w.rows(), shape.head3_w.cols());
  p.head3_b = Matrix(shape.head3_b.rows(), shape.head3_b.cols());
  return p;
}

std::vector<Matrix*> ModelParams::tensors() {
  std::vector<Matrix*> out;
  for (LayerParams& l : layers) {
    out.push_back(&l.w_self);
    out.push_back(&l.w_neigh);
    out.push_back(&l.w_read);
    out.push_back(&l.bias);
  }
  out.push_back(&type_embedding);
  out.push_back(&head1_w);
  out.push_back(&head1_b);
  out.push_back(&head2_w);
  out.push_back(&head2_b);
  out.push_back(&head3_w);
  out.push_back(&head3_b);
  return out;
}

std::vector<const Matrix*> ModelParams::tensors() const {
  auto mutable_this = const_cast<ModelParams*>(this);
  std::vector<Matrix*> t = mutable_this->tensors();
  return {t.begin(), t.end()};
}

bool ModelParams::all_finite() const {
  for (const Matrix* t : tensors())
    if (!t->all_finite()) return false;
  return true;
}

std::array<double, 2> forward(const TypedGraph& g, const Matrix& features,
                              const ModelParams& params, Activation activation,
                              ForwardCache* cache) {
  const int n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("forward on an empty graph");
  if (features.rows() != n)
    throw std::invalid_argument("feature rows disagree with node count");
  const int d = features.cols();
  if (params.head1_w.rows() != d)
    throw std::invalid_argument("feature columns disagree with model dimension");

  ForwardCache local;
  ForwardCache& c = cache ? *cache : local;
  c.h.clear();
  c.neigh.clear();
  c.mean.clear();
  c.h.push_back(features);

  Matrix pre, tmp;
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const LayerParams& layer = params.layers[l];
    const Matrix& h = c.h.back();

    Matrix neigh;
    neighbor_sums_sorted(g, h, neigh);
    Matrix mean;
    column_sums_sorted(h, mean);
    scale_inplace(mean, 1.0 / n);

    matmul(h, layer.w_self, pre);
    matmul(neigh, layer.w_neigh, tmp);
    add_inplace(pre, tmp);
    Matrix read;
    matmul(mean, layer.w_read, read);
    for (int v = 0; v < n; ++v) {
      double* prow = pre.row(v);
      const double* rrow = read.row(0);
      const double* brow = layer.bias.row(0);
      for (int j = 0; j < d; ++j) prow[j] += rrow[j] + brow[j];
    }
    apply_activation(activation, pre);
    check_finite(pre, "layer " + std::to_string(l));

    c.neigh.push_back(std::move(neigh));
    c.mean.push_back(std::move(mean));
    c.h.push_back(pre);
  }

  // max readout; ties go to the lowest node index
  const Matrix& hL = c.h.back();
  c.pooled = Matrix(1, d);
  c.argmax.assign(static_cast<std::size_t>(d), 0);
  for (int j = 0; j < d; ++j) {
    double best = hL.at(0, j);
    int best_v = 0;
    for (int v = 1; v < n; ++v) {
      if (hL.at(v, j) > best) {
        best = hL.at(v, j);
        best_v = v;
      }
    }
    c.pooled.at(0, j) = best;
    c.argmax[static_cast<std::size_t>(j)] = best_v;
  }

  matmul(c.pooled, params.head1_w, c.u1);
  add_inplace(c.u1, params.head1_b);
  apply_activation(activation, c.u1);
  matmul(c.u1, params.head2_w, c.u2);
  add_inplace(c.u2, params.head2_b);
  apply_activation(activation, c.u2);
  Matrix logits;
  matmul(c.u2, params.head3_w, logits);
  add_inplace(logits, params.head3_b);
  check_finite(logits, "head");
  return {logits.at(0, 0), logits.at(0, 1)};
}

namespace {

struct LossGrad {
  double loss;
  std::array<double, 2> dlogits;
};

LossGrad softmax_cross_entropy(const std::array<double, 2>& logits, int label) {
  const double m = std::max(logits[0], logits[1]);
  const double e0 = std::exp(logits[0] - m);
  const double e1 = std::exp(logits[1] - m);
  const double z = e0 + e1;
  const double lse = m + std::log(z);
  LossGrad out;
  out.loss = lse - logits[static_cast<std::size_t>(label)];
  out.dlogits = {e0 / z, e1 / z};
  out.dlogits[static_cast<std::size_t>(label)] -= 1.0;
  return out;
}

void elementwise_mul_act_grad(Activation a, const Matrix& out_vals, Matrix& grad) {
  double* g = grad.data().data();
  const double* y = out_vals.data().data();
  const std::size_t n = grad.data().size();
  for (std::size_t i = 0; i < n; ++i) g[i] *= act_backward_from_output(a, y[i]);
}

// accumulate += a^T b without reallocating
void accumulate_at_b(const Matrix& a, const Matrix& b, Matrix& acc) {
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    const double* arow = a.row(i);
    const double* brow = b.row(i);
    for (int kk = 0; kk < k; ++kk) {
      const double av = arow[kk];
      double* orow = acc.row(kk);
      for (int j = 0; j < m; ++j) orow[j] += av * brow[j];
    }
  }
}

}  // namespace

double loss_and_grad(std::span<const BatchItem> batch, const ModelParams& params,
                     Activation activation, ModelParams& grads,
                     std::vector<std::array<double, 2>>* logits_out) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  const int d = params.head1_w.rows();
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  double total_loss = 0.0;

  ForwardCache cache;
  Matrix tmp, t2;
  for (const BatchItem& item : batch) {
    const TypedGraph& g = *item.graph;
    const int n = g.num_nodes();
    std::array<double, 2> logits = forward(g, *item.features, params, activation, &cache);
    if (logits_out) logits_out->push_back(logits);
    LossGrad lg = softmax_cross_entropy(logits, item.label);
    total_loss += lg.loss * inv_batch;

    // head backward
    Matrix dlogits(1, kClasses);
    dlogits.at(0, 0) = lg.dlogits[0] * inv_batch;
    dlogits.at(0, 1) = lg.dlogits[1] * inv_batch;

    accumulate_at_b(cache.u2, dlogits, grads.head3_w);
    add_inplace(grads.head3_b, dlogits);
    Matrix du2;
    matmul_a_bt(dlogits, params.head3_w, du2);
    elementwise_mul_act_grad(activation, cache.u2, du2);

    accumulate_at_b(cache.u1, du2, grads.head2_w);
    add_inplace(grads.head2_b, du2);
    Matrix du1;
    matmul_a_bt(du2, params.head2_w, du1);
    elementwise_mul_act_grad(activation, cache.u1, du1);

    accumulate_at_b(cache.pooled, du1, grads.head1_w);
    add_inplace(grads.head1_b, du1);
    Matrix dpooled;
    matmul_a_bt(du1, params.head1_w, dpooled);

    // readout backward: subgradient to the recorded argmax rows
    Matrix dh(n, d);
    for (int j = 0; j < d; ++j)
      dh.at(cache.argmax[static_cast<std::size_t>(j)], j) = dpooled.at(0, j);

    for (int l = static_cast<int>(params.layers.size()) - 1; l >= 0; --l) {
      const LayerParams& layer = params.layers[static_cast<std::size_t>(l)];
      LayerParams& glayer = grads.layers[static_cast<std::size_t>(l)];
      const Matrix& h_in = cache.h[static_cast<std::size_t>(l)];
      const Matrix& h_out = cache.h[static_cast<std::size_t>(l) + 1];
      const Matrix& neigh_in = cache.neigh[static_cast<std::size_t>(l)];
      const Matrix& mean_in = cache.mean[static_cast<std::size_t>(l)];

      elementwise_mul_act_grad(activation, h_out, dh);  // dh now at pre-activation
      if (!dh.all_finite())
        throw NumericError("non-finite gradient at layer " + std::to_string(l));

      accumulate_at_b(h_in, dh, glayer.w_self);
      accumulate_at_b(neigh_in, dh, glayer.w_neigh);

      Matrix colsum;
      column_sums(dh, colsum);
      accumulate_at_b(mean_in, colsum, glayer.w_read);
      add_inplace(glayer.bias, colsum);

      // dh_in = dh W_self^T + A (dh W_neigh^T) + (1/n) 1 (colsum W_read^T)
      Matrix dh_in;
      matmul_a_bt(dh, layer.w_self, dh_in);
      matmul_a_bt(dh, layer.w_neigh, tmp);
      neighbor_sums_plain(g, tmp, t2);
      add_inplace(dh_in, t2);
      Matrix dread;
      matmul_a_bt(colsum, layer.w_read, dread);
      scale_inplace(dread, 1.0 / n);
      for (int v = 0; v < n; ++v) {
        double* row = dh_in.row(v);
        const double* rrow = dread.row(0);
        for (int j = 0; j < d; ++j) row[j] += rrow[j];
      }
      dh = std::move(dh_in);
    }

    // input features: deterministic columns flow into the type embedding
    const int d_det = grads.type_embedding.cols();
    if (d_det > 0) {
      const int d_rand = d - d_det;
      for (int v = 0; v < n; ++v) {
        double* erow =
            grads.type_embedding.row(g.type(v) == NodeType::Literal ? 0 : 1);
        const double* drow = dh.row(v);
        for (int j = 0; j < d_det; ++j) erow[j] += drow[d_rand + j];
      }
    }
  }
  return total_loss;
}

AdamState AdamState::zeros_like(const ModelParams& shape) {
  AdamState s;
  s.m = ModelParams::zeros_like(shape);
  s.v = ModelParams::zeros_like(shape);
  return s;
}

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               double lr, double beta1, double beta2, double eps) {
  ++state.t;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
  std::vector<Matrix*> p = params.tensors();
  std::vector<const Matrix*> g = static_cast<const ModelParams&>(grads).tensors();
  std::vector<Matrix*> m = state.m.tensors();
  std::vector<Matrix*> v = state.v.tensors();
  for (std::size_t i = 0; i < p.size(); ++i) {
    double* pp = p[i]->data().data();
    const double* gg = g[i]->data().data();
    double* mm = m[i]->data().data();
    double* vv = v[i]->data().data();
    const std::size_t count = p[i]->data().size();
    for (std::size_t k = 0; k < count; ++k) {
      mm[k] = beta1 * mm[k] + (1.0 - beta1) * gg[k];
      vv[k] = beta2 * vv[k] + (1.0 - beta2) * gg[k] * gg[k];
      const double mhat = mm[k] / bc1;
      const double vhat = vv[k] / bc2;
      pp[k] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

}  // namespace wlrni
