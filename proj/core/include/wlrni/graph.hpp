#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wlrni/logic.hpp"

namespace wlrni {

enum class NodeType : unsigned char { Literal = 0, Disjunction = 1 };

// Undirected simple graph with typed nodes. Edges are kept sorted with u < v.
// Provenance strings are advisory metadata; they take no part in equality,
// isomorphism, or WL refinement.
class TypedGraph {
 public:
  TypedGraph() = default;
  explicit TypedGraph(std::vector<NodeType> types)
      : types_(std::move(types)), adjacency_(types_.size()) {}

  int num_nodes() const { return static_cast<int>(types_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  NodeType type(int v) const { return types_.at(static_cast<std::size_t>(v)); }
  const std::vector<NodeType>& types() const { return types_; }

  int add_node(NodeType t, std::string provenance = {});

  // Throws std::invalid_argument on self-loops, out-of-range endpoints, or
  // duplicate edges.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  // Sorted, each pair with first < second.
  const std::vector<std::pair<int, int>>& edges() const;
  const std::vector<int>& neighbors(int v) const {
    return adjacency_.at(static_cast<std::size_t>(v));
  }
  int degree(int v) const {
    return static_cast<int>(adjacency_.at(static_cast<std::size_t>(v)).size());
  }

  const std::string& provenance(int v) const {
    return provenance_.at(static_cast<std::size_t>(v));
  }
  void set_provenance(int v, std::string p) {
    provenance_.at(static_cast<std::size_t>(v)) = std::move(p);
  }

  // Structural equality: types + edges, provenance ignored.
  friend bool operator==(const TypedGraph& a, const TypedGraph& b) {
    return a.types_ == b.types_ && a.sorted_edges() == b.sorted_edges();
  }

 private:
  std::vector<std::pair<int, int>> sorted_edges() const;

  std::vector<NodeType> types_;
  std::vector<std::string> provenance_{};
  std::vector<std::vector<int>> adjacency_;
  mutable std::vector<std::pair<int, int>> edges_;
  mutable bool edges_sorted_ = true;
};

// Clause-graph encoding: variable i becomes literal nodes 2i (positive) and
// 2i+1 (negative) joined by an edge; clause j becomes disjunction node
// 2*num_vars + j with an edge to each of its literals. Throws on tautological
// clauses, whose encoding would collapse the complement edge ambiguity.
TypedGraph encode_cnf(const CnfFormula& formula);

// Inverse of encode_cnf up to variable polarity naming: literal pairs are
// recovered from literal-literal edges (lower index taken as positive), which
// preserves satisfiability. Throws if the graph does not have the encoding
// shape.
CnfFormula decode_cnf(const TypedGraph& g);

// Indices of h shifted by g.num_nodes(); types, edges, provenance concatenated.
TypedGraph disjoint_union(const TypedGraph& g, const TypedGraph& h);

// Relabel nodes: node v of g becomes node perm[v]. Test/diagnostic helper.
TypedGraph apply_permutation(const TypedGraph& g, const std::vector<int>& perm);

// Exact type- and edge-preserving isomorphism decision via backtracking over
// candidate bijections, ordered by (type, stable joint 1-WL color, degree).
// Refuses graphs above `max_nodes`.
bool are_isomorphic(const TypedGraph& g, const TypedGraph& h, int max_nodes = 256);

}  // namespace wlrni
