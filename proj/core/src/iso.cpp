#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "wlrni/graph.hpp"
#include "wlrni/wl.hpp"

namespace wlrni {

namespace {

struct IsoSearch {
  int n;
  const std::vector<char>& adj_g;
  const std::vector<char>& adj_h;
  const std::vector<std::uint32_t>& color_g;
  const std::vector<std::uint32_t>& color_h;
  std::vector<int> map_gh;      // g node -> h node or -1
  std::vector<char> used_h;
  std::vector<int> class_size;  // h-side color class sizes

  bool adj(const std::vector<char>& m, int a, int b) const {
    return m[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(b)] != 0;
  }

  // Next g node to map: most already-mapped neighbors, then smallest
  // candidate class, then smallest index.
  int pick() const {
    int best = -1, best_mapped = -1, best_class = 0;
    for (int v = 0; v < n; ++v) {
      if (map_gh[static_cast<std::size_t>(v)] != -1) continue;
      int mapped = 0;
      for (int u = 0; u < n; ++u)
        if (map_gh[static_cast<std::size_t>(u)] != -1 && adj(adj_g, v, u)) ++mapped;
      int cls = class_size[color_g[static_cast<std::size_t>(v)]];
      if (best == -1 || mapped > best_mapped ||
          (mapped == best_mapped && cls < best_class)) {
        best = v;
        best_mapped = mapped;
        best_class = cls;
      }
    }
    return best;
  }

  bool search(int depth) {
    if (depth == n) return true;
    const int v = pick();
    const std::uint32_t c = color_g[static_cast<std::size_t>(v)];
    for (int w = 0; w < n; ++w) {
      if (used_h[static_cast<std::size_t>(w)] ||
          color_h[static_cast<std::size_t>(w)] != c)
        continue;
      bool ok = true;
      for (int u = 0; u < n && ok; ++u) {
        int mu = map_gh[static_cast<std::size_t>(u)];
        if (mu == -1) continue;
        if (adj(adj_g, v, u) != adj(adj_h, w, mu)) ok = false;
      }
      if (!ok) continue;
      map_gh[static_cast<std::size_t>(v)] = w;
      used_h[static_cast<std::size_t>(w)] = 1;
      if (search(depth + 1)) return true;
      map_gh[static_cast<std::size_t>(v)] = -1;
      used_h[static_cast<std::size_t>(w)] = 0;
    }
    return false;
  }
};

std::vector<char> adjacency_matrix(const TypedGraph& g) {
  const std::size_t n = static_cast<std::size_t>(g.num_nodes());
  std::vector<char> m(n * n, 0);
  for (auto [a, b] : g.edges()) {
    m[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = 1;
    m[static_cast<std::size_t>(b) * n + static_cast<std::size_t>(a)] = 1;
  }
  return m;
}

}  // namespace

bool are_isomorphic(const TypedGraph& g, const TypedGraph& h, int max_nodes) {
  if (g.num_nodes() > max_nodes || h.num_nodes() > max_nodes)
    throw std::invalid_argument("are_isomorphic: node count exceeds cap " +
                                std::to_string(max_nodes));
  const int n = g.num_nodes();
  if (n != h.num_nodes() || g.num_edges() != h.num_edges()) return false;
  if (n == 0) return true;

  // Necessary conditions: per-type degree multisets, then joint stable 1-WL.
  std::map<std::pair<NodeType, int>, int> deg_g, deg_h;
  for (int v = 0; v < n; ++v) {
    ++deg_g[{g.type(v), g.degree(v)}];
    ++deg_h[{h.type(v), h.degree(v)}];
  }
  if (deg_g != deg_h) return false;

  Coloring joint = wl1_refine(disjoint_union(g, h));
  std::vector<std::int64_t> cg(joint.num_colors, 0), ch(joint.num_colors, 0);
  for (int v = 0; v < 2 * n; ++v)
    ++(v < n ? cg : ch)[joint.colors[static_cast<std::size_t>(v)]];
  if (cg != ch) return false;

  std::vector<std::uint32_t> color_g(joint.colors.begin(), joint.colors.begin() + n);
  std::vector<std::uint32_t> color_h(joint.colors.begin() + n, joint.colors.end());
  std::vector<int> class_size(joint.num_colors, 0);
  for (std::uint32_t c : color_h) ++class_size[c];

  const std::vector<char> adj_g = adjacency_matrix(g);
  const std::vector<char> adj_h = adjacency_matrix(h);
  IsoSearch search{n,
                   adj_g,
                   adj_h,
                   color_g,
                   color_h,
                   std::vector<int>(static_cast<std::size_t>(n), -1),
                   std::vector<char>(static_cast<std::size_t>(n), 0),
                   class_size};
  return search.search(0);
}

}  // namespace wlrni
