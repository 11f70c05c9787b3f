#include "wlrni/wl.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wlrni {

namespace {

std::vector<std::pair<std::uint32_t, std::int64_t>> make_histogram(
    const std::vector<std::uint32_t>& colors, std::uint32_t num_colors) {
  std::vector<std::int64_t> counts(num_colors, 0);
  for (std::uint32_t c : colors) ++counts[c];
  std::vector<std::pair<std::uint32_t, std::int64_t>> hist;
  hist.reserve(num_colors);
  for (std::uint32_t c = 0; c < num_colors; ++c)
    if (counts[c] > 0) hist.emplace_back(c, counts[c]);
  return hist;
}

// Assigns dense ids in lexicographic signature order. Signatures are
// equal-length slices of `sigs`, one per element.
std::uint32_t canonical_assign(const std::vector<std::uint64_t>& sigs,
                               std::size_t sig_len, std::size_t count,
                               std::vector<std::uint32_t>& out) {
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    const std::uint64_t* pa = sigs.data() + a * sig_len;
    const std::uint64_t* pb = sigs.data() + b * sig_len;
    for (std::size_t i = 0; i < sig_len; ++i) {
      if (pa[i] != pb[i]) return pa[i] < pb[i];
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  out.resize(count);
  std::uint32_t next_id = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0 && less(order[i - 1], order[i])) ++next_id;
    out[order[i]] = next_id;
  }
  return count == 0 ? 0 : next_id + 1;
}

// Variable-length signature variant (1-WL: degree-sized multisets).
std::uint32_t canonical_assign_varlen(
    std::vector<std::vector<std::uint32_t>>& sigs,
    std::vector<std::uint32_t>& out) {
  const std::size_t count = sigs.size();
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return sigs[a] < sigs[b];
  });
  out.resize(count);
  std::uint32_t next_id = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0 && sigs[order[i - 1]] < sigs[order[i]]) ++next_id;
    out[order[i]] = next_id;
  }
  return count == 0 ? 0 : next_id + 1;
}

}  // namespace

Coloring wl1_refine(const TypedGraph& g) {
  const int n = g.num_nodes();
  Coloring result;
  if (n == 0) return result;

  // Initial partition by node type, canonically indexed.
  std::vector<std::vector<std::uint32_t>> sigs(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    sigs[static_cast<std::size_t>(v)] = {static_cast<std::uint32_t>(g.type(v))};
  std::uint32_t num_colors = canonical_assign_varlen(sigs, result.colors);

  while (true) {
    for (int v = 0; v < n; ++v) {
      auto& sig = sigs[static_cast<std::size_t>(v)];
      sig.clear();
      sig.push_back(result.colors[static_cast<std::size_t>(v)]);
      for (int u : g.neighbors(v))
        sig.push_back(result.colors[static_cast<std::size_t>(u)]);
      std::sort(sig.begin() + 1, sig.end());
    }
    std::vector<std::uint32_t> next;
    std::uint32_t next_count = canonical_assign_varlen(sigs, next);
    result.colors = std::move(next);
    ++result.rounds;
    if (next_count == num_colors) break;  // partition stable
    num_colors = next_count;
  }
  result.num_colors = num_colors;
  result.histogram = make_histogram(result.colors, num_colors);
  return result;
}

PairColoring fwl2_refine(const TypedGraph& g, int max_nodes) {
  const int n = g.num_nodes();
  if (n > max_nodes)
    throw std::invalid_argument("fwl2_refine: " + std::to_string(n) +
                                " nodes exceeds cap " + std::to_string(max_nodes));
  PairColoring result;
  result.num_nodes = n;
  if (n == 0) return result;

  const std::size_t nn = static_cast<std::size_t>(n);
  const std::size_t pair_count = nn * nn;

  // Initial color: (type(u), type(v), equal | adjacent | non-adjacent).
  {
    std::vector<std::uint64_t> sigs(pair_count);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        std::uint64_t rel = (u == v) ? 0 : (g.has_edge(u, v) ? 1 : 2);
        sigs[nn * static_cast<std::size_t>(u) + static_cast<std::size_t>(v)] =
            (static_cast<std::uint64_t>(g.type(u)) << 4) |
            (static_cast<std::uint64_t>(g.type(v)) << 2) | rel;
      }
    }
    result.num_colors = canonical_assign(sigs, 1, pair_count, result.colors);
  }

  const std::size_t sig_len = nn + 1;
  std::vector<std::uint64_t> sigs(pair_count * sig_len);
  std::vector<std::uint32_t> next;
  while (true) {
    for (std::size_t u = 0; u < nn; ++u) {
      for (std::size_t v = 0; v < nn; ++v) {
        const std::size_t p = u * nn + v;
        std::uint64_t* sig = sigs.data() + p * sig_len;
        sig[0] = result.colors[p];
        for (std::size_t w = 0; w < nn; ++w) {
          sig[1 + w] = (static_cast<std::uint64_t>(result.colors[u * nn + w]) << 32) |
                       result.colors[w * nn + v];
        }
        std::sort(sig + 1, sig + sig_len);
      }
    }
    std::uint32_t next_count = canonical_assign(sigs, sig_len, pair_count, next);
    result.colors = next;
    ++result.rounds;
    if (next_count == result.num_colors) break;
    result.num_colors = next_count;
  }
  result.histogram = make_histogram(result.colors, result.num_colors);
  return result;
}

std::variant<Coloring, PairColoring> wl_refine(WlKind kind, const TypedGraph& g,
                                               int fwl2_max_nodes) {
  if (kind == WlKind::WL1) return wl1_refine(g);
  return fwl2_refine(g, fwl2_max_nodes);
}

bool wl_distinguishes(WlKind kind, const TypedGraph& g, const TypedGraph& h,
                      int fwl2_max_nodes) {
  const TypedGraph u = disjoint_union(g, h);
  const int ng = g.num_nodes();
  const int nu = u.num_nodes();

  if (kind == WlKind::WL1) {
    Coloring col = wl1_refine(u);
    std::vector<std::int64_t> cg(col.num_colors, 0), ch(col.num_colors, 0);
    for (int v = 0; v < nu; ++v)
      ++(v < ng ? cg : ch)[col.colors[static_cast<std::size_t>(v)]];
    return cg != ch;
  }

  PairColoring pc = fwl2_refine(u, fwl2_max_nodes);
  std::vector<std::int64_t> cg(pc.num_colors, 0), ch(pc.num_colors, 0);
  for (int a = 0; a < nu; ++a) {
    for (int b = 0; b < nu; ++b) {
      if (a < ng && b < ng)
        ++cg[pc.color(a, b)];
      else if (a >= ng && b >= ng)
        ++ch[pc.color(a, b)];
    }
  }
  return cg != ch;
}

}  // namespace wlrni
