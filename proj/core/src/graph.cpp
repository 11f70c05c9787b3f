#include "wlrni/graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace wlrni {

int TypedGraph::add_node(NodeType t, std::string provenance) {
  types_.push_back(t);
  provenance_.push_back(std::move(provenance));
  adjacency_.emplace_back();
  return static_cast<int>(types_.size()) - 1;
}

void TypedGraph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self-loop");
  if (u < 0 || v < 0 || u >= num_nodes() || v >= num_nodes())
    throw std::invalid_argument("edge endpoint out of range");
  if (has_edge(u, v)) throw std::invalid_argument("duplicate edge");
  if (u > v) std::swap(u, v);
  edges_.emplace_back(u, v);
  edges_sorted_ = false;
  adjacency_[static_cast<std::size_t>(u)].push_back(v);
  adjacency_[static_cast<std::size_t>(v)].push_back(u);
}

bool TypedGraph::has_edge(int u, int v) const {
  const auto& adj = adjacency_.at(static_cast<std::size_t>(u));
  return std::find(adj.begin(), adj.end(), v) != adj.end();
}

const std::vector<std::pair<int, int>>& TypedGraph::edges() const {
  if (!edges_sorted_) {
    std::sort(edges_.begin(), edges_.end());
    edges_sorted_ = true;
  }
  return edges_;
}

std::vector<std::pair<int, int>> TypedGraph::sorted_edges() const { return edges(); }

TypedGraph encode_cnf(const CnfFormula& formula) {
  formula.check_well_formed();
  for (std::size_t ci = 0; ci < formula.clauses.size(); ++ci)
    if (formula.clauses[ci].is_tautology())
      throw std::invalid_argument("tautological clause " + std::to_string(ci) +
                                  " cannot be encoded");

  TypedGraph g;
  for (int v = 0; v < formula.num_vars; ++v) {
    g.add_node(NodeType::Literal, "x" + std::to_string(v) + "+");
    g.add_node(NodeType::Literal, "x" + std::to_string(v) + "-");
    g.add_edge(2 * v, 2 * v + 1);
  }
  for (std::size_t ci = 0; ci < formula.clauses.size(); ++ci) {
    int d = g.add_node(NodeType::Disjunction, "d" + std::to_string(ci));
    for (const Literal& l : formula.clauses[ci].literals)
      g.add_edge(d, 2 * l.var + (l.negated ? 1 : 0));
  }
  return g;
}

CnfFormula decode_cnf(const TypedGraph& g) {
  const int n = g.num_nodes();
  // Pair up literal nodes through their unique literal-literal edge.
  std::vector<int> mate(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (g.type(v) != NodeType::Literal) continue;
    int found = -1;
    for (int u : g.neighbors(v)) {
      if (g.type(u) != NodeType::Literal) continue;
      if (found != -1)
        throw std::invalid_argument("literal node " + std::to_string(v) +
                                    " has multiple literal neighbors");
      found = u;
    }
    if (found == -1)
      throw std::invalid_argument("literal node " + std::to_string(v) +
                                  " has no complement");
    mate[static_cast<std::size_t>(v)] = found;
  }

  // Lower node of each pair is taken as the positive literal.
  std::vector<int> var_of(static_cast<std::size_t>(n), -1);
  std::vector<bool> neg_of(static_cast<std::size_t>(n), false);
  int num_vars = 0;
  for (int v = 0; v < n; ++v) {
    if (g.type(v) != NodeType::Literal || var_of[static_cast<std::size_t>(v)] != -1)
      continue;
    int m = mate[static_cast<std::size_t>(v)];
    var_of[static_cast<std::size_t>(v)] = num_vars;
    var_of[static_cast<std::size_t>(m)] = num_vars;
    neg_of[static_cast<std::size_t>(v)] = false;
    neg_of[static_cast<std::size_t>(m)] = true;
    ++num_vars;
  }

  CnfFormula formula;
  formula.num_vars = num_vars;
  for (int v = 0; v < n; ++v) {
    if (g.type(v) != NodeType::Disjunction) continue;
    Clause c;
    for (int u : g.neighbors(v)) {
      if (g.type(u) != NodeType::Literal)
        throw std::invalid_argument("disjunction node " + std::to_string(v) +
                                    " adjacent to a non-literal node");
      c.literals.push_back({var_of[static_cast<std::size_t>(u)],
                            neg_of[static_cast<std::size_t>(u)]});
    }
    if (c.literals.empty())
      throw std::invalid_argument("isolated disjunction node " + std::to_string(v));
    std::sort(c.literals.begin(), c.literals.end());
    formula.clauses.push_back(std::move(c));
  }
  formula.check_well_formed();
  return formula;
}

TypedGraph disjoint_union(const TypedGraph& g, const TypedGraph& h) {
  TypedGraph u;
  for (int v = 0; v < g.num_nodes(); ++v) u.add_node(g.type(v), g.provenance(v));
  for (int v = 0; v < h.num_nodes(); ++v) u.add_node(h.type(v), h.provenance(v));
  const int shift = g.num_nodes();
  for (auto [a, b] : g.edges()) u.add_edge(a, b);
  for (auto [a, b] : h.edges()) u.add_edge(a + shift, b + shift);
  return u;
}

TypedGraph apply_permutation(const TypedGraph& g, const std::vector<int>& perm) {
  const int n = g.num_nodes();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation size mismatch");
  std::vector<NodeType> types(static_cast<std::size_t>(n));
  std::vector<std::string> prov(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    types[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = g.type(v);
    prov[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] =
        g.provenance(v);
  }
  TypedGraph out;
  for (int v = 0; v < n; ++v) out.add_node(types[static_cast<std::size_t>(v)],
                                           prov[static_cast<std::size_t>(v)]);
  for (auto [a, b] : g.edges())
    out.add_edge(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
  return out;
}

}  // namespace wlrni
