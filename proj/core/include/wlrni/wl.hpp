#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "wlrni/graph.hpp"

namespace wlrni {

// Stable node coloring. Color ids are dense and canonical: at every round,
// ids are assigned in lexicographic order of the refinement signatures, so
// runs over a disjoint union yield histograms directly comparable between the
// two sides. No hashing anywhere; collisions cannot corrupt certificates.
struct Coloring {
  std::vector<std::uint32_t> colors;
  int rounds = 0;
  std::uint32_t num_colors = 0;
  // (color id, count), ascending by color id.
  std::vector<std::pair<std::uint32_t, std::int64_t>> histogram;
};

// Stable coloring of ordered node pairs (folklore 2-WL).
struct PairColoring {
  int num_nodes = 0;
  std::vector<std::uint32_t> colors;  // row-major: (u,v) at u*num_nodes+v
  int rounds = 0;
  std::uint32_t num_colors = 0;
  std::vector<std::pair<std::uint32_t, std::int64_t>> histogram;

  std::uint32_t color(int u, int v) const {
    return colors[static_cast<std::size_t>(u) *
                      static_cast<std::size_t>(num_nodes) +
                  static_cast<std::size_t>(v)];
  }
};

enum class WlKind { WL1, FWL2 };

// 1-WL: initial color = node type; each round a node's new color is the
// canonical id of (old color, sorted multiset of neighbor colors); stops when
// the partition stops growing.
Coloring wl1_refine(const TypedGraph& g);

// Folklore 2-WL over ordered pairs: initial color of (u,v) is the canonical
// id of (type(u), type(v), equal/adjacent/non-adjacent); each round the new
// color is the canonical id of (old color, sorted multiset over all nodes w
// of (color(u,w), color(w,v))). Refuses graphs above `max_nodes`.
PairColoring fwl2_refine(const TypedGraph& g, int max_nodes = 512);

std::variant<Coloring, PairColoring> wl_refine(WlKind kind, const TypedGraph& g,
                                               int fwl2_max_nodes = 512);

// Joint refinement on the disjoint union of g and h (shared color namespace);
// true iff the two sides' stable histograms differ. For FWL2 the cap applies
// to the union's node count.
bool wl_distinguishes(WlKind kind, const TypedGraph& g, const TypedGraph& h,
                      int fwl2_max_nodes = 512);

}  // namespace wlrni
