#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "wlrni/datagen.hpp"
#include "wlrni/dataset_io.hpp"
#include "wlrni/wl.hpp"

using namespace wlrni;

namespace {

Clause clause(std::initializer_list<Literal> lits) { return Clause{lits}; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("chain expansions") {
  CnfFormula c2 = chain(ChainDir::Inc, 0, 2);
  REQUIRE(c2.clauses.size() == 2);
  CHECK(c2.clauses[0] == clause({neg(0), pos(1)}));
  CHECK(c2.clauses[1] == clause({neg(1), pos(0)}));

  CnfFormula c4 = chain(ChainDir::Inc, 0, 4);
  REQUIRE(c4.clauses.size() == 4);
  CHECK(c4.clauses[0] == clause({neg(0), pos(1)}));
  CHECK(c4.clauses[1] == clause({neg(1), pos(2)}));
  CHECK(c4.clauses[2] == clause({neg(2), pos(3)}));
  CHECK(c4.clauses[3] == clause({neg(3), pos(0)}));

  CnfFormula d2 = chain(ChainDir::Dec, 0, 2);
  CHECK(d2.clauses[0] == clause({pos(0), neg(1)}));
  CHECK(d2.clauses[1] == clause({pos(1), neg(0)}));

  // offset start behaves the same, shifted
  CnfFormula mid = chain(ChainDir::Dec, 2, 4);
  CHECK(mid.clauses[0] == clause({pos(2), neg(3)}));
  CHECK(mid.clauses[1] == clause({pos(3), neg(2)}));

  CHECK_THROWS_AS(chain(ChainDir::Inc, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(chain(ChainDir::Inc, 3, 3), std::invalid_argument);
}

TEST_CASE("chains force all variables equal") {
  for (ChainDir dir : {ChainDir::Inc, ChainDir::Dec}) {
    CnfFormula f = chain(dir, 0, 5);
    Assignment a;
    a.values.resize(5);
    for (int bits = 0; bits < 32; ++bits) {
      for (int v = 0; v < 5; ++v)
        a.values[static_cast<std::size_t>(v)] = (bits >> v) & 1;
      const bool all_equal = bits == 0 || bits == 31;
      CHECK(eval_assignment(f, a) == all_equal);
    }
  }
}

TEST_CASE("bridge expansions") {
  CnfFormula b2 = bridge(2);
  REQUIRE(b2.clauses.size() == 2);
  CHECK(b2.clauses[0] == clause({pos(0), pos(1)}));
  CHECK(b2.clauses[1] == clause({neg(0), neg(1)}));

  CnfFormula b4 = bridge(4);
  REQUIRE(b4.clauses.size() == 4);
  CHECK(b4.clauses[0] == clause({pos(0), pos(3)}));
  CHECK(b4.clauses[1] == clause({neg(0), neg(3)}));
  CHECK(b4.clauses[2] == clause({pos(1), pos(2)}));
  CHECK(b4.clauses[3] == clause({neg(1), neg(2)}));

  CHECK_THROWS_AS(bridge(0), std::invalid_argument);
  CHECK_THROWS_AS(bridge(3), std::invalid_argument);
}

TEST_CASE("bridge forces mirrored variables apart") {
  CnfFormula b4 = bridge(4);
  Assignment a;
  a.values.resize(4);
  for (int bits = 0; bits < 16; ++bits) {
    for (int v = 0; v < 4; ++v)
      a.values[static_cast<std::size_t>(v)] = (bits >> v) & 1;
    const bool mirrored_opposite =
        a.value(0) != a.value(3) && a.value(1) != a.value(2);
    CHECK(eval_assignment(b4, a) == mirrored_opposite);
  }
}

TEST_CASE("core pair shapes and labels") {
  for (int n = 2; n <= 4; ++n) {
    auto [unsat_core, sat_core] = make_core_pair(n);
    CHECK(unsat_core.num_vars == 2 * n);
    CHECK(sat_core.num_vars == 2 * n);
    CHECK(static_cast<int>(unsat_core.clauses.size()) == 4 * n);
    CHECK(static_cast<int>(sat_core.clauses.size()) == 4 * n);
    CHECK_FALSE(enumerate_sat_bruteforce(unsat_core).satisfiable);
    CHECK(enumerate_sat_bruteforce(sat_core).satisfiable);
  }
  CHECK_THROWS_AS(make_core_pair(1), std::invalid_argument);
}

TEST_CASE("quadrangulation growth yields valid embedded base graphs") {
  Rng rng = Rng::from_seed(2);
  for (int nodes : {4, 12, 15, 30}) {
    BaseGraph b = gen_quadrangulation(nodes, rng);
    CHECK(b.num_nodes == nodes);
    CHECK(static_cast<int>(b.edges.size()) == 2 * nodes - 4);
    // rotation lists must cover each vertex's incident edges exactly
    std::vector<int> degree(static_cast<std::size_t>(nodes), 0);
    for (auto [u, v] : b.edges) {
      ++degree[static_cast<std::size_t>(u)];
      ++degree[static_cast<std::size_t>(v)];
      CHECK(b.part[static_cast<std::size_t>(u)] !=
            b.part[static_cast<std::size_t>(v)]);
    }
    for (int v = 0; v < nodes; ++v)
      CHECK(static_cast<int>(b.rotation[static_cast<std::size_t>(v)].size()) ==
            degree[static_cast<std::size_t>(v)]);

    // the import checker re-validates simplicity, bipartiteness, 2-connectivity
    std::ostringstream text;
    text << b.num_nodes << " " << b.edges.size() << "\n";
    for (auto [u, v] : b.edges) text << u << " " << v << "\n";
    std::istringstream in(text.str());
    BaseGraph reparsed = parse_base_graph(in);
    CHECK(reparsed.part == b.part);
  }
}

TEST_CASE("base graph import rejects bad inputs") {
  auto reject = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_base_graph(in), std::invalid_argument);
  };
  reject("4 3\n0 1\n1 2\n2 3\n");            // path: not 2-connected
  reject("4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n");  // chord makes an odd cycle
  reject("4 4\n0 1\n1 2\n2 3\n");            // truncated
  reject("4 4\n0 1\n1 2\n2 3\n3 5\n");       // endpoint out of range
  std::istringstream ok("4 4\n0 1\n1 2\n2 3\n3 0\n");
  CHECK(parse_base_graph(ok).num_nodes == 4);
}

TEST_CASE("planar components are satisfiable, narrow, and big enough") {
  Rng rng = Rng::from_seed(42);
  for (int i = 0; i < 10; ++i) {
    CnfFormula f = gen_planar_component(12, rng);
    CHECK(solve_sat(f).satisfiable);
    CHECK(f.num_vars >= 6);
    CHECK(static_cast<int>(f.clauses.size()) >= 2);
    for (const Clause& c : f.clauses) {
      CHECK(c.width() >= 1);
      CHECK(c.width() <= 5);
      CHECK_FALSE(c.is_tautology());
    }
  }
}

TEST_CASE("planar component generation is reproducible") {
  Rng a = Rng::from_seed(31337);
  Rng b = Rng::from_seed(31337);
  CHECK(gen_planar_component(12, a) == gen_planar_component(12, b));
}

TEST_CASE("gen_exp_pair satisfies all four properties and the size envelope") {
  Rng rng = Rng::from_seed(5150);
  for (int n = 2; n <= 4; ++n) {
    GraphPair pair = gen_exp_pair(n, n == 3 ? 15 : 12, rng);
    PairFlags flags = validate_pair(pair);
    CHECK(flags.sat_labels_ok);
    CHECK(flags.non_isomorphic);
    CHECK(flags.wl1_indistinguishable.value());
    CHECK(flags.fwl2_distinguishable.value());
    CHECK(flags.all_ok());

    for (const CnfFormula* f : {&pair.sat_formula, &pair.unsat_formula}) {
      CHECK(f->num_vars >= 10);
      CHECK(f->num_vars <= 22);
      CHECK(static_cast<int>(f->clauses.size()) >= 10);
      CHECK(static_cast<int>(f->clauses.size()) <= 30);
    }
    CHECK(pair.sat_graph.num_nodes() == pair.unsat_graph.num_nodes());

    // 1-WL indistinguishability needs matching per-type degree sequences
    std::vector<std::pair<int, int>> ds, du;
    for (int v = 0; v < pair.sat_graph.num_nodes(); ++v) {
      ds.push_back({static_cast<int>(pair.sat_graph.type(v)),
                    pair.sat_graph.degree(v)});
      du.push_back({static_cast<int>(pair.unsat_graph.type(v)),
                    pair.unsat_graph.degree(v)});
    }
    std::sort(ds.begin(), ds.end());
    std::sort(du.begin(), du.end());
    CHECK(ds == du);
  }
}

TEST_CASE("validate_pair flags a pair of identical graphs") {
  auto [unsat_core, sat_core] = make_core_pair(2);
  GraphPair pair;
  pair.subset = Subset::Exp;
  pair.sat_formula = sat_core;
  pair.unsat_formula = sat_core;
  pair.sat_graph = encode_cnf(sat_core);
  pair.unsat_graph = pair.sat_graph;
  PairFlags flags = validate_pair(pair);
  CHECK_FALSE(flags.non_isomorphic);
  CHECK_FALSE(flags.sat_labels_ok);  // both sides satisfiable
  CHECK_FALSE(flags.all_ok());
}

TEST_CASE("hand-built pair with a shared planar component validates") {
  Rng rng = Rng::from_seed(808);
  CnfFormula planar = gen_planar_component(12, rng);
  auto [unsat_core, sat_core] = make_core_pair(3);
  GraphPair pair;
  pair.n = 3;
  pair.subset = Subset::Exp;
  pair.sat_formula = conjoin(planar, sat_core);
  pair.unsat_formula = conjoin(planar, unsat_core);
  pair.sat_graph = encode_cnf(pair.sat_formula);
  pair.unsat_graph = encode_cnf(pair.unsat_formula);
  PairFlags flags = validate_pair(pair);
  CHECK(flags.all_ok());
}

TEST_CASE("corrupt_pair flips satisfiability and 1-WL visibility") {
  Rng rng = Rng::from_seed(6001);
  GraphPair exp_pair = gen_exp_pair(2, 12, rng);
  const CnfFormula original_unsat = exp_pair.unsat_formula;

  Rng crng = Rng::from_seed(6002);
  GraphPair corrupted = corrupt_pair(exp_pair, crng);
  CHECK(corrupted.subset == Subset::Corrupt);
  CHECK(corrupted.unsat_formula == original_unsat);
  CHECK_FALSE(solve_sat(corrupted.unsat_formula).satisfiable);
  CHECK(solve_sat(corrupted.sat_formula).satisfiable);
  CHECK(wl_distinguishes(WlKind::WL1, corrupted.sat_graph, corrupted.unsat_graph));

  PairFlags flags = validate_pair(corrupted);
  CHECK(flags.sat_labels_ok);
  CHECK(flags.wl1_distinguishable.value());
  CHECK(flags.all_ok());

  // trace: at least 3 additions, at least one retained, replay agrees
  CHECK(corrupted.corruption_trace.size() >= 3);
  int retained = 0;
  for (const CorruptionEdit& e : corrupted.corruption_trace) retained += e.retained;
  CHECK(retained >= 1);
  CHECK(verify_corruption_trace(corrupted));

  // the corrupted graph only ever gains edges over the unsat side
  std::set<std::pair<int, int>> sat_edges(corrupted.sat_graph.edges().begin(),
                                          corrupted.sat_graph.edges().end());
  for (auto e : corrupted.unsat_graph.edges()) CHECK(sat_edges.count(e) == 1);
  CHECK(corrupted.sat_graph.num_edges() >= corrupted.unsat_graph.num_edges() + 1);

  CHECK_THROWS_AS(corrupt_pair(corrupted, crng), std::invalid_argument);
}

TEST_CASE("verify_corruption_trace rejects a doctored trace") {
  Rng rng = Rng::from_seed(6003);
  GraphPair pair = corrupt_pair(gen_exp_pair(2, 12, rng), rng);
  REQUIRE(verify_corruption_trace(pair));

  GraphPair flipped = pair;
  flipped.corruption_trace[0].retained = !flipped.corruption_trace[0].retained;
  CHECK_FALSE(verify_corruption_trace(flipped));

  GraphPair truncated = pair;
  truncated.corruption_trace.clear();
  CHECK_FALSE(verify_corruption_trace(truncated));
}

TEST_CASE("generate_dataset composes subsets deterministically") {
  GeneratorConfig cfg;
  cfg.num_pairs = 6;
  cfg.corrupt_fraction = 0.5;
  cfg.seed = 99;
  cfg.planar_sizes = {{12, 5}, {15, 1}};
  Dataset ds = generate_dataset(cfg);
  REQUIRE(ds.pairs.size() == 6);
  CHECK(ds.manifest.exp_count == 3);
  CHECK(ds.manifest.corrupt_count == 3);
  for (std::size_t i = 0; i < ds.pairs.size(); ++i) {
    CHECK(ds.pairs[i].pair_id == static_cast<int>(i));
    CHECK(ds.pairs[i].n >= 2);
    CHECK(ds.pairs[i].n <= 4);
  }
  ValidationReport report = validate_pairs(ds.pairs);
  CHECK(report.valid());

  // byte-identical across reruns and across worker counts
  std::string bytes1 = serialize_records(ds.pairs);
  Dataset again = generate_dataset(cfg);
  CHECK(serialize_records(again.pairs) == bytes1);
  GeneratorConfig parallel = cfg;
  parallel.jobs = 2;
  Dataset par = generate_dataset(parallel);
  CHECK(serialize_records(par.pairs) == bytes1);
}

TEST_CASE("dataset round-trips through the file format") {
  GeneratorConfig cfg;
  cfg.num_pairs = 4;
  cfg.corrupt_fraction = 0.5;
  cfg.seed = 7;
  Dataset ds = generate_dataset(cfg);
  const std::string path = temp_path("wlrni_test_roundtrip.jsonl");
  save_dataset(ds, path);

  std::vector<LoadedPair> loaded = load_dataset(path);
  REQUIRE(loaded.size() == ds.pairs.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].pair_id == ds.pairs[i].pair_id);
    CHECK(loaded[i].subset == ds.pairs[i].subset);
    CHECK(loaded[i].n == ds.pairs[i].n);
    CHECK(loaded[i].sat_graph == ds.pairs[i].sat_graph);
    CHECK(loaded[i].unsat_graph == ds.pairs[i].unsat_graph);

    GraphPair rebuilt = to_graph_pair(loaded[i]);
    PairFlags flags = validate_pair(rebuilt);
    CHECK(flags.all_ok());
  }
  CHECK(std::filesystem::exists(path + ".manifest.json"));
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".manifest.json");
}

TEST_CASE("load_dataset rejects malformed files") {
  const std::string path = temp_path("wlrni_test_bad.jsonl");
  {
    std::ofstream out(path);
    out << R"({"pair_id":0,"role":"sat","subset":"exp","n":2,"num_nodes":1,)"
        << R"("node_types":["L"],"edges":[],"label":0})"
        << "\n";
  }
  CHECK_THROWS(load_dataset(path));  // label inconsistent with role
  std::filesystem::remove(path);
}

TEST_CASE("generator config validation") {
  GeneratorConfig cfg;
  cfg.num_pairs = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.num_pairs = 1;
  cfg.n_min = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.n_min = 3;
  cfg.n_max = 2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.n_max = 3;
  cfg.corrupt_fraction = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("imported base pools feed the generator") {
  Rng rng = Rng::from_seed(404);
  BaseGraph base = gen_quadrangulation(12, rng);
  const std::string path = temp_path("wlrni_test_bases.txt");
  {
    std::ofstream out(path);
    out << base.num_nodes << " " << base.edges.size() << "\n";
    for (auto [u, v] : base.edges) out << u << " " << v << "\n";
  }
  std::vector<BaseGraph> pool = load_base_graphs(path);
  REQUIRE(pool.size() == 1);
  GraphPair pair = gen_exp_pair(2, 0, rng, 5, 0, &pool);
  CHECK(validate_pair(pair).all_ok());
  std::filesystem::remove(path);
}
