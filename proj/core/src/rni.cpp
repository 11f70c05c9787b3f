#include "wlrni/rni.hpp"

#include <cmath>
#include <stdexcept>

namespace wlrni {

double sample_feature(InitScheme scheme, int d, Rng& rng) {
  switch (scheme) {
    case InitScheme::Normal01:
      return rng.normal();
    case InitScheme::UniformPM1:
      return rng.uniform(-1.0, 1.0);
    case InitScheme::XavierNormal:
      return rng.normal() / std::sqrt(static_cast<double>(d));
    case InitScheme::XavierUniform: {
      double limit = std::sqrt(3.0 / static_cast<double>(d));
      return rng.uniform(-limit, limit);
    }
  }
  throw std::logic_error("unknown init scheme");
}

Matrix init_features(const TypedGraph& g, int d, double rni_fraction,
                     InitScheme scheme, const Matrix& type_embedding, Rng& rng) {
  if (d < 1) throw std::invalid_argument("feature dimension must be positive");
  if (rni_fraction < 0.0 || rni_fraction > 1.0)
    throw std::invalid_argument("rni_fraction must lie in [0,1]");
  const int d_rand = num_random_columns(d, rni_fraction);
  const int d_det = d - d_rand;
  if (type_embedding.rows() != 2 || type_embedding.cols() != d_det)
    throw std::invalid_argument("type embedding must be 2 x " +
                                std::to_string(d_det));

  Matrix features(g.num_nodes(), d);
  for (int v = 0; v < g.num_nodes(); ++v) {
    double* row = features.row(v);
    for (int j = 0; j < d_rand; ++j) row[j] = sample_feature(scheme, d, rng);
    const double* emb = type_embedding.row(g.type(v) == NodeType::Literal ? 0 : 1);
    for (int j = 0; j < d_det; ++j) row[d_rand + j] = emb[j];
  }
  return features;
}

LemmaParams LemmaParams::make(int n, double delta) {
  if (n < 1) throw std::invalid_argument("lemma needs n >= 1");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("delta must lie in (0,1)");
  LemmaParams p;
  p.n = n;
  p.delta = delta;
  p.c = static_cast<long long>(std::ceil(2.0 / delta));
  p.k = p.c * p.c * static_cast<long long>(n) * n * n;
  p.thresholds = p.c * static_cast<long long>(n) * n;
  return p;
}

namespace {

inline double linearized_sigmoid(double x) {
  if (x < 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x;
}

}  // namespace

bool individualization_check(const LemmaParams& params, std::span<const double> r) {
  if (static_cast<int>(r.size()) != params.n)
    throw std::invalid_argument("expected " + std::to_string(params.n) + " draws");
  const double step =
      static_cast<double>(params.k) / static_cast<double>(params.thresholds);

  std::vector<std::vector<char>> bits(static_cast<std::size_t>(params.n));
  for (int i = 0; i < params.n; ++i) {
    auto& vec = bits[static_cast<std::size_t>(i)];
    vec.resize(static_cast<std::size_t>(params.thresholds));
    const double kr = static_cast<double>(params.k) * r[static_cast<std::size_t>(i)];
    for (long long j = 1; j <= params.thresholds; ++j) {
      const double s = kr - static_cast<double>(j - 1) * step;
      const double sigma = linearized_sigmoid(s);
      if (sigma != 0.0 && sigma != 1.0) return false;  // condition (i)
      vec[static_cast<std::size_t>(j - 1)] = sigma == 1.0;
    }
  }
  for (int i = 0; i < params.n; ++i)
    for (int i2 = i + 1; i2 < params.n; ++i2)
      if (bits[static_cast<std::size_t>(i)] == bits[static_cast<std::size_t>(i2)])
        return false;  // condition (ii)
  return true;
}

bool individualization_trial(const LemmaParams& params, Rng& rng) {
  std::vector<double> r(static_cast<std::size_t>(params.n));
  for (double& v : r) v = rng.next_double();
  return individualization_check(params, r);
}

RateEstimate wilson_interval(long long successes, long long trials) {
  RateEstimate e;
  e.successes = successes;
  e.trials = trials;
  if (trials <= 0) return e;
  const double z = 1.959963984540054;  // 97.5th normal percentile
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = p + z2 / (2.0 * nn);
  const double margin = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  e.rate = p;
  e.wilson_low = (center - margin) / denom;
  e.wilson_high = (center + margin) / denom;
  return e;
}

RateEstimate individualization_rate(const LemmaParams& params, long long trials,
                                    Rng& rng) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  long long successes = 0;
  for (long long t = 0; t < trials; ++t)
    if (individualization_trial(params, rng)) ++successes;
  return wilson_interval(successes, trials);
}

}  // namespace wlrni
