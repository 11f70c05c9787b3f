#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "wlrni/rni.hpp"

using namespace wlrni;
using namespace wlrni::testing;

namespace {

Matrix ramp_embedding(int d_det) {
  Matrix emb(2, d_det);
  for (int j = 0; j < d_det; ++j) {
    emb.at(0, j) = 1.0 + j;
    emb.at(1, j) = -(1.0 + j);
  }
  return emb;
}

TypedGraph isolated_nodes(int n) {
  TypedGraph g;
  for (int v = 0; v < n; ++v)
    g.add_node(v % 2 == 0 ? NodeType::Literal : NodeType::Disjunction);
  return g;
}

}  // namespace

TEST_CASE("randomized column budget is floor(d * fraction)") {
  CHECK(num_random_columns(64, 0.0) == 0);
  CHECK(num_random_columns(64, 0.125) == 8);
  CHECK(num_random_columns(64, 0.5) == 32);
  CHECK(num_random_columns(64, 0.875) == 56);
  CHECK(num_random_columns(64, 1.0) == 64);
  CHECK(num_random_columns(7, 0.5) == 3);
}

TEST_CASE("zero fraction broadcasts the type embedding") {
  TypedGraph g = isolated_nodes(6);
  Matrix emb = ramp_embedding(4);
  Rng rng = Rng::from_seed(1);
  Matrix f = init_features(g, 4, 0.0, InitScheme::Normal01, emb, rng);
  REQUIRE(f.rows() == 6);
  REQUIRE(f.cols() == 4);
  for (int v = 0; v < 6; ++v)
    for (int j = 0; j < 4; ++j)
      CHECK(f.at(v, j) == emb.at(g.type(v) == NodeType::Literal ? 0 : 1, j));
  // identical rows for identical types
  for (int j = 0; j < 4; ++j) CHECK(f.at(0, j) == f.at(2, j));
}

TEST_CASE("half fraction randomizes exactly the leading columns") {
  TypedGraph g = isolated_nodes(8);
  Matrix emb = ramp_embedding(32);
  Rng rng = Rng::from_seed(2);
  Matrix f = init_features(g, 64, 0.5, InitScheme::Normal01, emb, rng);
  // deterministic tail matches the embedding for every node
  for (int v = 0; v < 8; ++v)
    for (int j = 0; j < 32; ++j)
      CHECK(f.at(v, 32 + j) == emb.at(g.type(v) == NodeType::Literal ? 0 : 1, j));
  // same-type nodes still differ in the randomized head
  bool any_diff = false;
  for (int j = 0; j < 32; ++j) any_diff = any_diff || f.at(0, j) != f.at(2, j);
  CHECK(any_diff);
}

TEST_CASE("shape errors are rejected") {
  TypedGraph g = isolated_nodes(2);
  Matrix wrong = ramp_embedding(5);
  Rng rng = Rng::from_seed(3);
  CHECK_THROWS_AS(init_features(g, 8, 0.5, InitScheme::Normal01, wrong, rng),
                  std::invalid_argument);
  Matrix emb = ramp_embedding(8);
  CHECK_THROWS_AS(init_features(g, 8, -0.1, InitScheme::Normal01, emb, rng),
                  std::invalid_argument);
}

TEST_CASE("feature draws match the schemes' moments") {
  TypedGraph g = isolated_nodes(10000);
  Matrix emb(2, 0);
  Rng rng = Rng::from_seed(4);

  SUBCASE("standard normal") {
    Matrix f = init_features(g, 64, 1.0, InitScheme::Normal01, emb, rng);
    for (int j = 0; j < 64; ++j) {
      double mean = 0, var = 0;
      for (int v = 0; v < f.rows(); ++v) mean += f.at(v, j);
      mean /= f.rows();
      for (int v = 0; v < f.rows(); ++v) {
        double d = f.at(v, j) - mean;
        var += d * d;
      }
      var /= f.rows();
      CHECK(std::fabs(mean) < 0.05);  // 5 sigma / sqrt(10^4)
      CHECK(var == doctest::Approx(1.0).epsilon(0.10));
    }
  }

  SUBCASE("uniform on [-1,1]") {
    Matrix f = init_features(g, 16, 1.0, InitScheme::UniformPM1, emb, rng);
    double lo = 1e9, hi = -1e9, mean = 0;
    for (double v : f.data()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      mean += v;
    }
    mean /= static_cast<double>(f.data().size());
    CHECK(lo >= -1.0);
    CHECK(hi <= 1.0);
    CHECK(lo < -0.99);
    CHECK(hi > 0.99);
    CHECK(std::fabs(mean) < 0.01);
  }

  SUBCASE("xavier variants carry variance 1/d") {
    for (InitScheme s : {InitScheme::XavierNormal, InitScheme::XavierUniform}) {
      const int d = 64;
      Matrix f = init_features(g, d, 1.0, s, emb, rng);
      double var = 0;
      for (double v : f.data()) var += v * v;
      var /= static_cast<double>(f.data().size());
      CHECK(var == doctest::Approx(1.0 / d).epsilon(0.10));
      if (s == InitScheme::XavierUniform) {
        const double limit = std::sqrt(3.0 / d);
        for (double v : f.data()) CHECK(std::fabs(v) <= limit);
      }
    }
  }
}

TEST_CASE("row permutation keeps features attached to their nodes") {
  TypedGraph g = isolated_nodes(7);
  Matrix emb = ramp_embedding(3);
  Rng rng = Rng::from_seed(5);
  Matrix f = init_features(g, 6, 0.5, InitScheme::UniformPM1, emb, rng);

  Rng prng = Rng::from_seed(6);
  std::vector<int> perm = random_permutation(7, prng);
  TypedGraph pg = apply_permutation(g, perm);
  Matrix pf(7, 6);
  for (int v = 0; v < 7; ++v)
    for (int j = 0; j < 6; ++j)
      pf.at(perm[static_cast<std::size_t>(v)], j) = f.at(v, j);

  // permuted rows are a valid feature matrix for the permuted graph:
  // deterministic columns agree with the permuted node types exactly
  for (int v = 0; v < 7; ++v)
    for (int j = 0; j < 3; ++j)
      CHECK(pf.at(v, 3 + j) == emb.at(pg.type(v) == NodeType::Literal ? 0 : 1, j));
}

TEST_CASE("lemma parameter derivation") {
  LemmaParams p = LemmaParams::make(3, 0.5);
  CHECK(p.c == 4);
  CHECK(p.k == 432);
  CHECK(p.thresholds == 36);
  CHECK(p.k % p.thresholds == 0);
  CHECK(p.k / p.thresholds == p.c * p.n);

  LemmaParams q = LemmaParams::make(5, 0.2);
  CHECK(q.c == 10);
  CHECK(q.k == 12500);
  CHECK(q.thresholds == 250);

  CHECK_THROWS_AS(LemmaParams::make(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(LemmaParams::make(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(LemmaParams::make(3, 1.0), std::invalid_argument);
}

TEST_CASE("individualization_check on preset draws") {
  // single node: condition (ii) is vacuous, (i) decides
  LemmaParams p1 = LemmaParams::make(1, 0.5);  // c=4, k=16, 4 thresholds, step 4
  double r_int = 0.5;                          // k*r = 8, all sigma integral
  CHECK(individualization_check(p1, std::span<const double>(&r_int, 1)));
  double r_frac = 0.51;  // k*r = 8.16 leaves sigma(0.16) fractional
  CHECK_FALSE(individualization_check(p1, std::span<const double>(&r_frac, 1)));

  // multiples of 1/(c*n), spaced apart: integral sigmas and distinct vectors
  LemmaParams p2 = LemmaParams::make(2, 0.5);  // c=4, k=128, step 8
  std::vector<double> spaced = {1.0 / 8.0, 3.0 / 8.0};
  CHECK(individualization_check(p2, spaced));

  // identical draws always collide
  std::vector<double> same = {0.5, 0.5};
  CHECK_FALSE(individualization_check(p2, same));

  std::vector<double> wrong_size = {0.5};
  CHECK_THROWS_AS(individualization_check(p2, wrong_size), std::invalid_argument);
}

TEST_CASE("a single trial is a Bernoulli draw") {
  LemmaParams p = LemmaParams::make(2, 0.1);
  Rng rng = Rng::from_seed(1);
  RateEstimate e = individualization_rate(p, 1, rng);
  CHECK((e.rate == 0.0 || e.rate == 1.0));
  CHECK(e.trials == 1);
}

TEST_CASE("empirical success rate clears the 1-delta bound") {
  struct Case {
    int n;
    double delta;
    long long trials;
  };
  for (const Case& c : {Case{3, 0.5, 2000}, Case{5, 0.2, 500}}) {
    LemmaParams p = LemmaParams::make(c.n, c.delta);
    Rng rng = Rng::from_seed(1700);
    RateEstimate e = individualization_rate(p, c.trials, rng);
    CHECK(e.rate >= 1.0 - c.delta);
    CHECK(e.wilson_low >= 1.0 - c.delta - 0.05);
  }
}

TEST_CASE("wilson interval sanity") {
  RateEstimate e = wilson_interval(50, 100);
  CHECK(e.rate == 0.5);
  CHECK(e.wilson_low == doctest::Approx(0.4038).epsilon(0.01));
  CHECK(e.wilson_high == doctest::Approx(0.5962).epsilon(0.01));
  CHECK(wilson_interval(0, 10).wilson_low == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(wilson_interval(10, 10).wilson_high ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rng streams are reproducible and independent") {
  Rng a = Rng::from_seed(123);
  Rng b = Rng::from_seed(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng parent = Rng::from_seed(123);
  Rng c0 = parent.split(0);
  Rng c1 = parent.split(1);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += (c0.next_u64() == c1.next_u64());
  CHECK(same == 0);

  Rng u = Rng::from_seed(9);
  for (int i = 0; i < 1000; ++i) {
    double x = u.next_double();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    int k = u.uniform_int(3, 7);
    CHECK(k >= 3);
    CHECK(k <= 7);
  }
}
