#include "wlrni/dataset_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace wlrni {

namespace {

using json = nlohmann::ordered_json;

json graph_record(const GraphPair& pair, bool sat_role) {
  const TypedGraph& g = sat_role ? pair.sat_graph : pair.unsat_graph;
  json rec;
  rec["pair_id"] = pair.pair_id;
  rec["role"] = sat_role ? "sat" : "unsat";
  rec["subset"] = pair.subset == Subset::Exp ? "exp" : "corrupt";
  rec["n"] = pair.n;
  rec["num_nodes"] = g.num_nodes();
  json types = json::array();
  for (int v = 0; v < g.num_nodes(); ++v)
    types.push_back(g.type(v) == NodeType::Literal ? "L" : "D");
  rec["node_types"] = std::move(types);
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
  rec["edges"] = std::move(edges);
  rec["label"] = sat_role ? 1 : 0;
  return rec;
}

}  // namespace

std::string serialize_records(const std::vector<GraphPair>& pairs) {
  std::ostringstream out;
  for (const GraphPair& pair : pairs) {
    out << graph_record(pair, true).dump() << "\n";
    out << graph_record(pair, false).dump() << "\n";
  }
  return out.str();
}

std::string serialize_manifest(const Manifest& m) {
  json j;
  j["tool"] = "wlrni";
  j["version"] = m.tool_version;
  json cfg;
  cfg["num_pairs"] = m.config.num_pairs;
  cfg["n_min"] = m.config.n_min;
  cfg["n_max"] = m.config.n_max;
  json sizes = json::array();
  for (auto [nodes, weight] : m.config.planar_sizes)
    sizes.push_back(json::array({nodes, weight}));
  cfg["planar_sizes"] = std::move(sizes);
  cfg["max_clause_width"] = m.config.max_clause_width;
  cfg["corrupt_fraction"] = m.config.corrupt_fraction;
  cfg["seed"] = m.config.seed;
  cfg["base_graph_file"] = m.config.base_graph_file;
  j["config"] = std::move(cfg);
  j["pair_count"] = m.pair_count;
  j["exp_pairs"] = m.exp_count;
  j["corrupt_pairs"] = m.corrupt_count;
  j["graph_records"] = 2 * m.pair_count;
  j["checksum_fnv1a64"] = m.checksum_fnv1a64;
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

void save_dataset(Dataset& dataset, const std::string& path) {
  const std::string body = serialize_records(dataset.pairs);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(body)));
  dataset.manifest.checksum_fnv1a64 = hex;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  out << body;
  out.close();

  const std::string manifest_path = path + ".manifest.json";
  std::ofstream mout(manifest_path, std::ios::binary);
  if (!mout) throw std::runtime_error("cannot write manifest file: " + manifest_path);
  mout << serialize_manifest(dataset.manifest);
}

std::vector<LoadedPair> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);

  struct Half {
    bool have_sat = false, have_unsat = false;
    LoadedPair pair;
  };
  std::map<int, Half> by_id;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const std::exception& e) {
      throw std::runtime_error("dataset line " + std::to_string(line_no) +
                               ": bad JSON: " + e.what());
    }
    auto fail = [&](const std::string& msg) -> void {
      throw std::runtime_error("dataset line " + std::to_string(line_no) + ": " + msg);
    };

    const int pair_id = rec.at("pair_id").get<int>();
    const std::string role = rec.at("role").get<std::string>();
    const std::string subset = rec.at("subset").get<std::string>();
    const int n = rec.at("n").get<int>();
    const int num_nodes = rec.at("num_nodes").get<int>();
    const int label = rec.at("label").get<int>();
    if (role != "sat" && role != "unsat") fail("role must be sat|unsat");
    if (subset != "exp" && subset != "corrupt") fail("subset must be exp|corrupt");
    if (label != (role == "sat" ? 1 : 0)) fail("label inconsistent with role");

    std::vector<NodeType> types;
    for (const auto& t : rec.at("node_types")) {
      const std::string s = t.get<std::string>();
      if (s == "L")
        types.push_back(NodeType::Literal);
      else if (s == "D")
        types.push_back(NodeType::Disjunction);
      else
        fail("node type must be L|D");
    }
    if (static_cast<int>(types.size()) != num_nodes)
      fail("node_types length disagrees with num_nodes");

    TypedGraph g;
    for (NodeType t : types) g.add_node(t);
    for (const auto& e : rec.at("edges")) {
      const int u = e.at(0).get<int>();
      const int v = e.at(1).get<int>();
      if (u >= v) fail("edge endpoints must satisfy u < v");
      g.add_edge(u, v);
    }

    Half& half = by_id[pair_id];
    if ((role == "sat" && half.have_sat) || (role == "unsat" && half.have_unsat))
      fail("duplicate role for pair " + std::to_string(pair_id));
    if (half.have_sat || half.have_unsat) {
      if (half.pair.n != n) fail("n disagrees within pair");
      if ((half.pair.subset == Subset::Exp) != (subset == "exp"))
        fail("subset disagrees within pair");
    }
    half.pair.pair_id = pair_id;
    half.pair.n = n;
    half.pair.subset = subset == "exp" ? Subset::Exp : Subset::Corrupt;
    if (role == "sat") {
      half.pair.sat_graph = std::move(g);
      half.have_sat = true;
    } else {
      half.pair.unsat_graph = std::move(g);
      half.have_unsat = true;
    }
  }

  std::vector<LoadedPair> pairs;
  int expected = 0;
  for (auto& [id, half] : by_id) {
    if (id != expected)
      throw std::runtime_error("pair ids are not dense: expected " +
                               std::to_string(expected) + ", found " +
                               std::to_string(id));
    if (!half.have_sat || !half.have_unsat)
      throw std::runtime_error("pair " + std::to_string(id) + " is missing a role");
    pairs.push_back(std::move(half.pair));
    ++expected;
  }
  if (pairs.empty()) throw std::runtime_error("dataset file has no records");
  return pairs;
}

GraphPair to_graph_pair(const LoadedPair& loaded) {
  GraphPair pair;
  pair.pair_id = loaded.pair_id;
  pair.n = loaded.n;
  pair.subset = loaded.subset;
  pair.sat_graph = loaded.sat_graph;
  pair.unsat_graph = loaded.unsat_graph;
  pair.sat_formula = decode_cnf(loaded.sat_graph);
  pair.unsat_formula = decode_cnf(loaded.unsat_graph);
  return pair;
}

}  // namespace wlrni
