#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlrni/datagen.hpp"

namespace wlrni {

// One graph per line, two lines per pair (sat first). Field set and names are
// the on-disk contract: pair_id, role, subset, n, num_nodes, node_types
// ("L"/"D"), edges ([u,v] with u<v), label.
std::string serialize_records(const std::vector<GraphPair>& pairs);

// Manifest JSON; `manifest.checksum_fnv1a64` must already be filled.
std::string serialize_manifest(const Manifest& manifest);

// Writes `path` and `path + ".manifest.json"`, filling the manifest checksum
// from the serialized record bytes.
void save_dataset(Dataset& dataset, const std::string& path);

// A pair as reconstructed from a dataset file (no formulas, no edit trace).
struct LoadedPair {
  int pair_id = 0;
  int n = 0;
  Subset subset = Subset::Exp;
  TypedGraph sat_graph;
  TypedGraph unsat_graph;
};

// Parses and cross-checks a dataset file: dense unique pair ids, exactly one
// sat and one unsat record per pair, labels consistent with roles.
std::vector<LoadedPair> load_dataset(const std::string& path);

// Rebuilds a validatable pair by decoding the formulas out of the graphs
// (decode_cnf preserves satisfiability).
GraphPair to_graph_pair(const LoadedPair& loaded);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace wlrni
