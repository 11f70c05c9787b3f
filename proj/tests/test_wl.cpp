#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "fixtures.hpp"
#include "wlrni/datagen.hpp"
#include "wlrni/wl.hpp"

using namespace wlrni;
using namespace wlrni::testing;

namespace {

// Equitable: nodes of equal color see equal multisets of neighbor colors.
bool is_equitable(const TypedGraph& g, const Coloring& col) {
  std::map<std::uint32_t, std::multiset<std::uint32_t>> expected;
  for (int v = 0; v < g.num_nodes(); ++v) {
    std::multiset<std::uint32_t> seen;
    for (int u : g.neighbors(v))
      seen.insert(col.colors[static_cast<std::size_t>(u)]);
    auto [it, fresh] =
        expected.insert({col.colors[static_cast<std::size_t>(v)], seen});
    if (!fresh && it->second != seen) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("1-WL collapses regular graphs with uniform types in one round") {
  for (int n : {3, 5, 8}) {
    Coloring col = wl1_refine(cycle_graph(n));
    CHECK(col.num_colors == 1);
    CHECK(col.rounds == 1);
    CHECK(col.histogram ==
          std::vector<std::pair<std::uint32_t, std::int64_t>>{{0, n}});
  }
}

TEST_CASE("1-WL separates a path's interior from its ends") {
  TypedGraph path;
  for (int v = 0; v < 4; ++v) path.add_node(NodeType::Literal);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  Coloring col = wl1_refine(path);
  CHECK(col.num_colors == 2);
  CHECK(col.colors[0] == col.colors[3]);
  CHECK(col.colors[1] == col.colors[2]);
  CHECK(col.colors[0] != col.colors[1]);
}

TEST_CASE("initial colors include the node type") {
  TypedGraph g;
  g.add_node(NodeType::Literal);
  g.add_node(NodeType::Disjunction);
  Coloring col = wl1_refine(g);
  CHECK(col.num_colors == 2);
}

TEST_CASE("stable 1-WL colorings are equitable") {
  Rng rng = Rng::from_seed(5);
  for (int i = 0; i < 40; ++i) {
    TypedGraph g = random_graph(10, rng);
    Coloring col = wl1_refine(g);
    CHECK(is_equitable(g, col));
    CHECK(col.rounds <= g.num_nodes());
  }
}

TEST_CASE("histograms are invariant under relabeling") {
  Rng rng = Rng::from_seed(6);
  for (int i = 0; i < 25; ++i) {
    TypedGraph g = random_graph(10, rng);
    TypedGraph p = apply_permutation(g, random_permutation(g.num_nodes(), rng));
    CHECK(wl1_refine(g).histogram == wl1_refine(p).histogram);
    CHECK(fwl2_refine(g).histogram == fwl2_refine(p).histogram);
  }
}

TEST_CASE("the 7-node fixture: invisible to 1-WL, visible to folklore 2-WL") {
  auto [g, h] = figure1_pair();
  CHECK_FALSE(wl_distinguishes(WlKind::WL1, g, h));
  CHECK(wl_distinguishes(WlKind::FWL2, g, h));
}

TEST_CASE("no variant distinguishes a graph from itself or a relabeling") {
  Rng rng = Rng::from_seed(8);
  for (int i = 0; i < 10; ++i) {
    TypedGraph g = random_graph(8, rng);
    CHECK_FALSE(wl_distinguishes(WlKind::WL1, g, g));
    CHECK_FALSE(wl_distinguishes(WlKind::FWL2, g, g));
    TypedGraph p = apply_permutation(g, random_permutation(g.num_nodes(), rng));
    CHECK_FALSE(wl_distinguishes(WlKind::WL1, g, p));
    CHECK_FALSE(wl_distinguishes(WlKind::FWL2, g, p));
  }
}

TEST_CASE("core pair encodings: 1-WL blind, folklore 2-WL sighted") {
  for (int n = 2; n <= 4; ++n) {
    auto [unsat_core, sat_core] = make_core_pair(n);
    TypedGraph g = encode_cnf(sat_core);
    TypedGraph h = encode_cnf(unsat_core);
    CHECK_FALSE(wl_distinguishes(WlKind::WL1, g, h));
    CHECK(wl_distinguishes(WlKind::FWL2, g, h));
  }
}

TEST_CASE("1-WL distinguishability implies folklore-2-WL distinguishability") {
  Rng rng = Rng::from_seed(9);
  int distinguished = 0;
  for (int i = 0; i < 30; ++i) {
    TypedGraph g = random_graph(8, rng);
    TypedGraph h = random_graph(8, rng);
    if (g.num_nodes() != h.num_nodes()) continue;
    if (wl_distinguishes(WlKind::WL1, g, h)) {
      ++distinguished;
      CHECK(wl_distinguishes(WlKind::FWL2, g, h));
    }
  }
  CHECK(distinguished > 0);  // the property run must actually exercise pairs
}

TEST_CASE("isomorphic graphs are never distinguished") {
  Rng rng = Rng::from_seed(10);
  for (int i = 0; i < 15; ++i) {
    TypedGraph g = random_graph(7, rng);
    TypedGraph h = apply_permutation(g, random_permutation(g.num_nodes(), rng));
    REQUIRE(are_isomorphic(g, h));
    CHECK_FALSE(wl_distinguishes(WlKind::WL1, g, h));
    CHECK_FALSE(wl_distinguishes(WlKind::FWL2, g, h));
  }
}

TEST_CASE("refinement only ever splits color classes") {
  // refining the stable coloring one more time must not change the partition
  Rng rng = Rng::from_seed(13);
  for (int i = 0; i < 20; ++i) {
    TypedGraph g = random_graph(10, rng);
    Coloring col = wl1_refine(g);
    std::map<std::pair<std::uint32_t, std::multiset<std::uint32_t>>,
             std::set<std::uint32_t>>
        classes;
    for (int v = 0; v < g.num_nodes(); ++v) {
      std::multiset<std::uint32_t> nb;
      for (int u : g.neighbors(v)) nb.insert(col.colors[static_cast<std::size_t>(u)]);
      classes[{col.colors[static_cast<std::size_t>(v)], nb}].insert(
          col.colors[static_cast<std::size_t>(v)]);
    }
    CHECK(classes.size() == col.num_colors);  // one signature per stable color
  }
}

TEST_CASE("pair colorings are stable under one further round") {
  Rng rng = Rng::from_seed(14);
  TypedGraph g = random_graph(8, rng);
  PairColoring pc = fwl2_refine(g);
  CHECK(pc.rounds <= g.num_nodes() * g.num_nodes());
  const int n = g.num_nodes();
  // recompute one refinement round by hand and compare partitions
  std::map<std::vector<std::uint64_t>, std::set<std::uint32_t>> split;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      std::vector<std::uint64_t> sig{pc.color(u, v)};
      std::vector<std::uint64_t> ms;
      for (int w = 0; w < n; ++w)
        ms.push_back((static_cast<std::uint64_t>(pc.color(u, w)) << 32) |
                     pc.color(w, v));
      std::sort(ms.begin(), ms.end());
      sig.insert(sig.end(), ms.begin(), ms.end());
      split[sig].insert(pc.color(u, v));
    }
  }
  CHECK(split.size() == pc.num_colors);
  for (const auto& [sig, colors] : split) CHECK(colors.size() == 1);
}

TEST_CASE("fwl2_refine refuses graphs above the cap") {
  TypedGraph big;
  for (int v = 0; v < 20; ++v) big.add_node(NodeType::Literal);
  CHECK_THROWS_AS(fwl2_refine(big, 16), std::invalid_argument);
}

TEST_CASE("wl_refine dispatches on the kind") {
  TypedGraph g = cycle_graph(5);
  CHECK(std::holds_alternative<Coloring>(wl_refine(WlKind::WL1, g)));
  CHECK(std::holds_alternative<PairColoring>(wl_refine(WlKind::FWL2, g)));
}
