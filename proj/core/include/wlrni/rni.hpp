#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wlrni/graph.hpp"
#include "wlrni/linalg.hpp"
#include "wlrni/rng.hpp"

namespace wlrni {

enum class InitScheme { Normal01, UniformPM1, XavierNormal, XavierUniform };

// Draws one value for the given scheme. Xavier variants use
// fan_in = fan_out = d: XavierNormal is N(0, 1/d), XavierUniform is
// uniform on +-sqrt(3/d).
double sample_feature(InitScheme scheme, int d, Rng& rng);

// Node feature matrix (num_nodes x d): the first floor(d * rni_fraction)
// columns are sampled i.i.d. per node per scheme, fresh on every call; the
// remaining columns are copied from the type-embedding row of the node's
// type. type_embedding must be 2 x (d - floor(d * rni_fraction)).
Matrix init_features(const TypedGraph& g, int d, double rni_fraction,
                     InitScheme scheme, const Matrix& type_embedding, Rng& rng);

inline int num_random_columns(int d, double rni_fraction) {
  return static_cast<int>(d * rni_fraction);
}

// Parameters of the individualization experiment: n values r_i, c*n^2
// thresholds each, k = c^2 * n^3 with c = ceil(2/delta). k/(c*n^2) = c*n by
// construction.
struct LemmaParams {
  int n = 0;
  double delta = 0.0;
  long long c = 0;
  long long k = 0;
  long long thresholds = 0;  // per node: c * n^2

  static LemmaParams make(int n, double delta);
};

// Deterministic core of a trial on given draws r (size n): computes
// sigma(k*r_i - (j-1)*k/(c*n^2)) for the linearized sigmoid
// sigma(x) = min(max(x, 0), 1) and returns true iff every value is exactly
// 0 or 1 and the n resulting bit vectors are pairwise distinct.
bool individualization_check(const LemmaParams& params, std::span<const double> r);

// Samples r_1..r_n uniformly from [0,1] and runs the check.
bool individualization_trial(const LemmaParams& params, Rng& rng);

struct RateEstimate {
  long long successes = 0;
  long long trials = 0;
  double rate = 0.0;
  double wilson_low = 0.0;   // 95% Wilson interval
  double wilson_high = 1.0;
};

RateEstimate individualization_rate(const LemmaParams& params, long long trials,
                                    Rng& rng);

RateEstimate wilson_interval(long long successes, long long trials);

}  // namespace wlrni
