#pragma once

#include <utility>

#include "wlrni/graph.hpp"
#include "wlrni/rng.hpp"

namespace wlrni::testing {

inline TypedGraph cycle_graph(int n) {
  TypedGraph g;
  for (int v = 0; v < n; ++v) g.add_node(NodeType::Literal);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

// The classic 7-node pair: a triangle plus a 4-cycle versus a 7-cycle.
// 2-regular with uniform types, so 1-WL cannot tell them apart, while the
// triangle is visible to folklore 2-WL.
inline std::pair<TypedGraph, TypedGraph> figure1_pair() {
  TypedGraph g;
  for (int v = 0; v < 7; ++v) g.add_node(NodeType::Literal);
  g.add_edge(0, 1);
  g.add_edge(0, 6);
  g.add_edge(1, 6);
  g.add_edge(2, 3);
  g.add_edge(2, 5);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  return {g, cycle_graph(7)};
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = rng.uniform_int(0, i);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

inline TypedGraph random_graph(int max_nodes, Rng& rng, bool mixed_types = true) {
  const int n = rng.uniform_int(1, max_nodes);
  TypedGraph g;
  for (int v = 0; v < n; ++v)
    g.add_node(mixed_types && rng.next_bool() ? NodeType::Disjunction
                                              : NodeType::Literal);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_double() < 0.35) g.add_edge(u, v);
  return g;
}

}  // namespace wlrni::testing
