#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wlrni/graph.hpp"
#include "wlrni/logic.hpp"
#include "wlrni/rng.hpp"

namespace wlrni {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ChainDir { Inc, Dec };
enum class Subset { Exp, Corrupt };

// Cyclic implication chain over x_i..x_{j-1}: for Inc, clauses
// (!x_k v x_{i+((k-i+1) mod (j-i))}) for k = i..j-1; Dec flips all
// polarities. Every satisfying assignment sets x_i..x_{j-1} equal.
// Requires j - i >= 2.
CnfFormula chain(ChainDir dir, int i, int j);

// Over an even number 2n of variables: (x_i v x_{2n-1-i}) ^ (!x_i v !x_{2n-1-i})
// for i = 0..n-1, forcing mirrored variables to opposite values.
CnfFormula bridge(int two_n);

// The (unsatisfiable, satisfiable) core formulas over 2n variables:
// first = chain(Inc,0,2n) ^ bridge(2n), second = chain(Inc,0,n) ^
// chain(Dec,n,2n) ^ bridge(2n). Requires n >= 2.
std::pair<CnfFormula, CnfFormula> make_core_pair(int n);

// Conjunction of variable-disjoint formulas: b's variables are shifted past
// a's; clause lists concatenated.
CnfFormula conjoin(const CnfFormula& a, const CnfFormula& b);

// 2-connected bipartite planar base graph with an explicit embedding
// (rotation system), from which clause/variable incidences are read.
struct BaseGraph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> rotation;  // neighbors in embedding order
  std::vector<int> part;                   // bipartition side, 0 or 1
};

// Random quadrangulation growth: start from a 4-cycle and repeatedly split a
// face with a length-2 path between two opposite-part corners. Planar and
// bipartite by construction, 2-connected by the growth rule. Requires
// num_nodes >= 4.
BaseGraph gen_quadrangulation(int num_nodes, Rng& rng);

// "V E" header then E lines "u v" (0-based). Bipartition inferred by
// 2-coloring; throws if the graph is not simple, connected, bipartite and
// 2-connected. Planarity is declared by the supplier, not verified; the
// listed adjacency order is taken as the rotation.
BaseGraph parse_base_graph(std::istream& in);

// Reads consecutive base-graph blocks until end of file.
std::vector<BaseGraph> load_base_graphs(const std::string& path);

// Satisfiable CNF from a random base graph: the larger bipartition side
// becomes the variables, the other side the disjunctions; disjunctions wider
// than max_clause_width are split into consecutive runs in rotation order;
// literal polarities are uniform; duplicate clauses dropped. The whole
// procedure reruns until the formula is satisfiable.
CnfFormula gen_planar_component(int num_base_nodes, Rng& rng,
                                int max_clause_width = 5, int max_retries = 1000);

// One deterministic attempt on a fixed base graph (no satisfiability retry).
CnfFormula planar_component_from_base(const BaseGraph& base, Rng& rng,
                                      int max_clause_width = 5);

struct SeedTrace {
  std::uint64_t seed = 0;
  int pair_id = 0;
  int attempts = 1;  // generation attempts until validation passed
};

// One literal appended to a clause during corruption, in insertion order.
struct CorruptionEdit {
  int clause_index = 0;
  Literal lit;
  bool retained = true;

  friend bool operator==(const CorruptionEdit&, const CorruptionEdit&) = default;
};

struct GraphPair {
  int pair_id = 0;
  int n = 0;  // core half-size
  Subset subset = Subset::Exp;
  TypedGraph sat_graph;
  TypedGraph unsat_graph;
  CnfFormula sat_formula;
  CnfFormula unsat_formula;
  SeedTrace seed_trace;
  std::vector<CorruptionEdit> corruption_trace;  // Corrupt pairs only
};

struct GeneratorConfig {
  int num_pairs = 600;
  int n_min = 2;
  int n_max = 4;
  // (base node count, weight); weights are scaled to num_pairs proportionally.
  std::vector<std::pair<int, int>> planar_sizes = {{12, 500}, {15, 100}};
  int max_clause_width = 5;
  double corrupt_fraction = 0.0;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string base_graph_file;  // optional import pool; overrides planar_sizes

  void validate() const;
};

struct PairFlags {
  int pair_id = 0;
  Subset subset = Subset::Exp;
  bool sat_labels_ok = false;
  bool non_isomorphic = false;
  std::optional<bool> wl1_indistinguishable;  // Exp only
  std::optional<bool> fwl2_distinguishable;   // Exp only
  std::optional<bool> wl1_distinguishable;    // Corrupt only

  bool all_ok() const;
};

struct ValidationReport {
  std::vector<PairFlags> pairs;
  int exp_count = 0;
  int corrupt_count = 0;
  int failures = 0;

  bool valid() const { return failures == 0; }
};

PairFlags validate_pair(const GraphPair& pair);
ValidationReport validate_pairs(const std::vector<GraphPair>& pairs, int jobs = 1);

// Core pair + a shared planar component conjoined to both sides, encoded and
// validated; regenerates with fresh randomness until all Exp flags hold.
GraphPair gen_exp_pair(int n, int planar_base_nodes, Rng& rng,
                       int max_clause_width = 5, int pair_id = 0,
                       const std::vector<BaseGraph>* base_pool = nullptr,
                       int max_attempts = 50);

// Replaces the satisfiable side by a corrupted copy of the unsatisfiable one:
// non-redundant literals are added to uniformly chosen clauses of width below
// max_clause_width until at least 3 were added and the formula is
// satisfiable; then each added edge is scanned in insertion order and deleted
// exactly when its deletion does not restore unsatisfiability.
GraphPair corrupt_pair(const GraphPair& pair, Rng& rng, int max_clause_width = 5);

// Replays a Corrupt pair's edit trace against the DPLL oracle: the addition
// phase must end satisfiable, every retained edge must be necessary at its
// scan position, every dropped edge unnecessary, and the replay must
// reproduce sat_formula.
bool verify_corruption_trace(const GraphPair& pair);

struct Manifest {
  GeneratorConfig config;
  std::string tool_version;
  int pair_count = 0;
  int exp_count = 0;
  int corrupt_count = 0;
  std::string checksum_fnv1a64;  // over the serialized dataset bytes
};

struct Dataset {
  std::vector<GraphPair> pairs;
  Manifest manifest;
};

// (config, seed) fully determines the result, regardless of cfg.jobs: each
// pair derives its own RNG streams from (seed, pair_id).
Dataset generate_dataset(const GeneratorConfig& cfg);

}  // namespace wlrni
