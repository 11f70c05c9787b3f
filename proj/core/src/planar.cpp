#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wlrni/datagen.hpp"

namespace wlrni {

namespace {

// Directed quadrilateral face boundaries with globally consistent
// orientation; every edge appears in exactly two faces, once per direction.
using Face = std::array<int, 4>;

struct Growth {
  int num_nodes;
  std::vector<int> part;
  std::vector<std::pair<int, int>> edges;
  std::vector<Face> faces;
};

void split_face(Growth& g, std::size_t face_idx, int diagonal) {
  Face f = g.faces[face_idx];
  if (diagonal == 1) f = {f[1], f[2], f[3], f[0]};
  const int u = f[0], v = f[1], w = f[2], x = f[3];
  const int y = g.num_nodes++;
  g.part.push_back(g.part[static_cast<std::size_t>(v)]);
  g.edges.emplace_back(u, y);
  g.edges.emplace_back(w, y);
  g.faces[face_idx] = {u, v, w, y};
  g.faces.push_back({u, y, w, x});
}

// Rotation around each vertex, reconstructed from the face boundaries: in an
// oriented embedding, face ...a -> z -> b... makes edge z-b the successor of
// edge z-a around z.
std::vector<std::vector<int>> rotations_from_faces(const Growth& g) {
  std::vector<std::map<int, int>> succ(static_cast<std::size_t>(g.num_nodes));
  for (const Face& f : g.faces) {
    for (int i = 0; i < 4; ++i) {
      int a = f[static_cast<std::size_t>(i)];
      int z = f[static_cast<std::size_t>((i + 1) % 4)];
      int b = f[static_cast<std::size_t>((i + 2) % 4)];
      succ[static_cast<std::size_t>(z)][a] = b;
    }
  }
  std::vector<std::vector<int>> rot(static_cast<std::size_t>(g.num_nodes));
  for (int z = 0; z < g.num_nodes; ++z) {
    auto& s = succ[static_cast<std::size_t>(z)];
    if (s.empty()) continue;
    int start = s.begin()->first;
    int cur = start;
    do {
      rot[static_cast<std::size_t>(z)].push_back(cur);
      cur = s.at(cur);
    } while (cur != start);
    if (rot[static_cast<std::size_t>(z)].size() != s.size())
      throw std::logic_error("rotation reconstruction did not close a single cycle");
  }
  return rot;
}

}  // namespace

BaseGraph gen_quadrangulation(int num_nodes, Rng& rng) {
  if (num_nodes < 4)
    throw std::invalid_argument("quadrangulation needs at least 4 nodes");
  Growth g;
  g.num_nodes = 4;
  g.part = {0, 1, 0, 1};
  g.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  g.faces = {{0, 1, 2, 3}, {0, 3, 2, 1}};
  while (g.num_nodes < num_nodes) {
    std::size_t face_idx = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(g.faces.size()) - 1));
    split_face(g, face_idx, rng.uniform_int(0, 1));
  }
  BaseGraph out;
  out.num_nodes = g.num_nodes;
  out.edges = g.edges;
  out.rotation = rotations_from_faces(g);
  out.part = g.part;
  return out;
}

namespace {

void check_base_graph(BaseGraph& b) {
  const int n = b.num_nodes;
  if (n < 4) throw std::invalid_argument("base graph too small");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : b.edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw std::invalid_argument("base graph edge out of range or self-loop");
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second)
      throw std::invalid_argument("duplicate base graph edge");
  }

  // bipartition by BFS 2-coloring; also checks connectivity
  b.part.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : b.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<int> queue = {0};
  b.part[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (b.part[static_cast<std::size_t>(v)] == -1) {
        b.part[static_cast<std::size_t>(v)] = 1 - b.part[static_cast<std::size_t>(u)];
        queue.push_back(v);
      } else if (b.part[static_cast<std::size_t>(v)] ==
                 b.part[static_cast<std::size_t>(u)]) {
        throw std::invalid_argument("base graph is not bipartite");
      }
    }
  }
  if (static_cast<int>(queue.size()) != n)
    throw std::invalid_argument("base graph is not connected");

  // 2-connectivity: no articulation points (Tarjan low-link)
  std::vector<int> disc(static_cast<std::size_t>(n), -1),
      low(static_cast<std::size_t>(n), 0);
  int timer = 0;
  bool articulation = false;
  auto dfs = [&](auto&& self, int u, int parent) -> void {
    disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
    int children = 0;
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (v == parent) continue;
      if (disc[static_cast<std::size_t>(v)] == -1) {
        ++children;
        self(self, v, u);
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
        if (parent != -1 && low[static_cast<std::size_t>(v)] >=
                                disc[static_cast<std::size_t>(u)])
          articulation = true;
      } else {
        low[static_cast<std::size_t>(u)] =
            std::min(low[static_cast<std::size_t>(u)], disc[static_cast<std::size_t>(v)]);
      }
    }
    if (parent == -1 && children > 1) articulation = true;
  };
  dfs(dfs, 0, -1);
  if (articulation) throw std::invalid_argument("base graph is not 2-connected");

  // imported graphs carry no embedding; listed adjacency order stands in
  // for the rotation
  b.rotation = std::move(adj);
}

}  // namespace

BaseGraph parse_base_graph(std::istream& in) {
  int n = -1, e = -1;
  if (!(in >> n >> e) || n < 0 || e < 0)
    throw std::invalid_argument("base graph header must be 'V E'");
  BaseGraph b;
  b.num_nodes = n;
  for (int i = 0; i < e; ++i) {
    int u, v;
    if (!(in >> u >> v))
      throw std::invalid_argument("base graph truncated at edge " + std::to_string(i));
    b.edges.emplace_back(u, v);
  }
  check_base_graph(b);
  return b;
}

std::vector<BaseGraph> load_base_graphs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open base graph file: " + path);
  std::vector<BaseGraph> pool;
  while (true) {
    in >> std::ws;
    if (in.eof()) break;
    pool.push_back(parse_base_graph(in));
  }
  if (pool.empty()) throw std::invalid_argument("base graph file is empty: " + path);
  return pool;
}

CnfFormula planar_component_from_base(const BaseGraph& base, Rng& rng,
                                      int max_clause_width) {
  if (max_clause_width < 2)
    throw std::invalid_argument("max clause width must be at least 2");

  // The larger bipartition side holds the variables; ties go to the side of
  // vertex 0.
  int count0 = 0;
  for (int p : base.part) count0 += (p == 0);
  const int count1 = base.num_nodes - count0;
  const int var_part = (count1 > count0) ? 1 : 0;

  std::vector<int> var_id(static_cast<std::size_t>(base.num_nodes), -1);
  int num_vars = 0;
  for (int v = 0; v < base.num_nodes; ++v)
    if (base.part[static_cast<std::size_t>(v)] == var_part)
      var_id[static_cast<std::size_t>(v)] = num_vars++;

  CnfFormula formula;
  formula.num_vars = num_vars;
  std::set<std::vector<Literal>> dedup;
  for (int c = 0; c < base.num_nodes; ++c) {
    if (base.part[static_cast<std::size_t>(c)] == var_part) continue;
    const auto& rot = base.rotation[static_cast<std::size_t>(c)];
    const int deg = static_cast<int>(rot.size());
    // Wide disjunctions split into balanced runs, consecutive in the
    // rotation so each run stays planar-embeddable next to its clause node.
    const int runs = (deg + max_clause_width - 1) / max_clause_width;
    int offset = 0;
    for (int r = 0; r < runs; ++r) {
      const int len = deg / runs + (r < deg % runs ? 1 : 0);
      Clause clause;
      for (int k = 0; k < len; ++k) {
        int var_vertex = rot[static_cast<std::size_t>(offset + k)];
        clause.literals.push_back(
            {var_id[static_cast<std::size_t>(var_vertex)], rng.next_bool()});
      }
      offset += len;
      std::vector<Literal> key = clause.literals;
      std::sort(key.begin(), key.end());
      if (dedup.insert(key).second) formula.clauses.push_back(std::move(clause));
    }
  }
  formula.check_well_formed();
  return formula;
}

CnfFormula gen_planar_component(int num_base_nodes, Rng& rng,
                                int max_clause_width, int max_retries) {
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    BaseGraph base = gen_quadrangulation(num_base_nodes, rng);
    CnfFormula f = planar_component_from_base(base, rng, max_clause_width);
    if (solve_sat(f).satisfiable) return f;
  }
  throw GenerationError("planar component generation exhausted " +
                        std::to_string(max_retries) + " retries");
}

}  // namespace wlrni
