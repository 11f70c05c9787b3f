#include "wlrni/datagen.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "wlrni/version.hpp"
#include "wlrni/wl.hpp"

namespace wlrni {

CnfFormula chain(ChainDir dir, int i, int j) {
  if (j - i < 2) throw std::invalid_argument("chain needs at least 2 variables");
  const int len = j - i;
  CnfFormula f;
  f.num_vars = j;
  for (int k = i; k < j; ++k) {
    int next = i + ((k - i + 1) % len);
    bool flip = (dir == ChainDir::Dec);
    f.clauses.push_back({{Literal{k, !flip}, Literal{next, flip}}});
  }
  return f;
}

CnfFormula bridge(int two_n) {
  if (two_n < 2 || two_n % 2 != 0)
    throw std::invalid_argument("bridge needs a positive even variable count");
  const int n = two_n / 2;
  CnfFormula f;
  f.num_vars = two_n;
  for (int i = 0; i < n; ++i) {
    int m = two_n - 1 - i;
    f.clauses.push_back({{pos(i), pos(m)}});
    f.clauses.push_back({{neg(i), neg(m)}});
  }
  return f;
}

namespace {

// Conjunction over a shared variable space (no shifting).
CnfFormula conjoin_shared(const CnfFormula& a, const CnfFormula& b) {
  CnfFormula f;
  f.num_vars = std::max(a.num_vars, b.num_vars);
  f.clauses = a.clauses;
  f.clauses.insert(f.clauses.end(), b.clauses.begin(), b.clauses.end());
  return f;
}

}  // namespace

CnfFormula conjoin(const CnfFormula& a, const CnfFormula& b) {
  CnfFormula f;
  f.num_vars = a.num_vars + b.num_vars;
  f.clauses = a.clauses;
  for (const Clause& c : b.clauses) {
    Clause shifted;
    for (const Literal& l : c.literals)
      shifted.literals.push_back({l.var + a.num_vars, l.negated});
    f.clauses.push_back(std::move(shifted));
  }
  return f;
}

std::pair<CnfFormula, CnfFormula> make_core_pair(int n) {
  if (n < 2) throw std::invalid_argument("core pair needs n >= 2");
  CnfFormula unsat = conjoin_shared(chain(ChainDir::Inc, 0, 2 * n), bridge(2 * n));
  CnfFormula sat = conjoin_shared(
      conjoin_shared(chain(ChainDir::Inc, 0, n), chain(ChainDir::Dec, n, 2 * n)),
      bridge(2 * n));
  return {std::move(unsat), std::move(sat)};
}

void GeneratorConfig::validate() const {
  if (num_pairs < 1) throw std::invalid_argument("num_pairs must be positive");
  if (n_min < 2 || n_min > n_max)
    throw std::invalid_argument("need 2 <= n_min <= n_max");
  if (max_clause_width < 2)
    throw std::invalid_argument("max_clause_width must be at least 2");
  if (corrupt_fraction < 0.0 || corrupt_fraction > 1.0)
    throw std::invalid_argument("corrupt_fraction must lie in [0,1]");
  if (planar_sizes.empty() && base_graph_file.empty())
    throw std::invalid_argument("no planar sizes configured");
  for (auto [nodes, weight] : planar_sizes) {
    if (nodes < 4) throw std::invalid_argument("planar base size must be >= 4");
    if (weight < 0) throw std::invalid_argument("planar size weight must be >= 0");
  }
  if (jobs < 1) throw std::invalid_argument("jobs must be positive");
}

bool PairFlags::all_ok() const {
  bool ok = sat_labels_ok && non_isomorphic;
  if (wl1_indistinguishable) ok = ok && *wl1_indistinguishable;
  if (fwl2_distinguishable) ok = ok && *fwl2_distinguishable;
  if (wl1_distinguishable) ok = ok && *wl1_distinguishable;
  return ok;
}

PairFlags validate_pair(const GraphPair& pair) {
  PairFlags f;
  f.pair_id = pair.pair_id;
  f.subset = pair.subset;
  f.sat_labels_ok = solve_sat(pair.sat_formula).satisfiable &&
                    !solve_sat(pair.unsat_formula).satisfiable;
  f.non_isomorphic = !are_isomorphic(pair.sat_graph, pair.unsat_graph);
  if (pair.subset == Subset::Exp) {
    f.wl1_indistinguishable =
        !wl_distinguishes(WlKind::WL1, pair.sat_graph, pair.unsat_graph);
    f.fwl2_distinguishable =
        wl_distinguishes(WlKind::FWL2, pair.sat_graph, pair.unsat_graph);
  } else {
    f.wl1_distinguishable =
        wl_distinguishes(WlKind::WL1, pair.sat_graph, pair.unsat_graph);
  }
  return f;
}

ValidationReport validate_pairs(const std::vector<GraphPair>& pairs, int jobs) {
  ValidationReport report;
  report.pairs.resize(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= pairs.size()) break;
      report.pairs[i] = validate_pair(pairs[i]);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  for (const PairFlags& f : report.pairs) {
    if (f.subset == Subset::Exp)
      ++report.exp_count;
    else
      ++report.corrupt_count;
    if (!f.all_ok()) ++report.failures;
  }
  return report;
}

GraphPair gen_exp_pair(int n, int planar_base_nodes, Rng& rng,
                       int max_clause_width, int pair_id,
                       const std::vector<BaseGraph>* base_pool, int max_attempts) {
  if (n < 2) throw std::invalid_argument("gen_exp_pair needs n >= 2");
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    CnfFormula planar;
    if (base_pool) {
      // resample polarities (and pool entry) until satisfiable
      CnfFormula candidate;
      bool found = false;
      for (int r = 0; r < 1000 && !found; ++r) {
        const BaseGraph& base = (*base_pool)[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(base_pool->size()) - 1))];
        candidate = planar_component_from_base(base, rng, max_clause_width);
        found = solve_sat(candidate).satisfiable;
      }
      if (!found) throw GenerationError("imported base pool yielded no satisfiable component");
      planar = std::move(candidate);
    } else {
      planar = gen_planar_component(planar_base_nodes, rng, max_clause_width);
    }

    auto [core_unsat, core_sat] = make_core_pair(n);
    GraphPair pair;
    pair.pair_id = pair_id;
    pair.n = n;
    pair.subset = Subset::Exp;
    pair.unsat_formula = conjoin(planar, core_unsat);
    pair.sat_formula = conjoin(planar, core_sat);
    pair.unsat_graph = encode_cnf(pair.unsat_formula);
    pair.sat_graph = encode_cnf(pair.sat_formula);
    pair.seed_trace.pair_id = pair_id;
    pair.seed_trace.attempts = attempt;
    if (validate_pair(pair).all_ok()) return pair;
  }
  throw GenerationError("pair validation kept failing after " +
                        std::to_string(max_attempts) + " attempts");
}

namespace {

void remove_literal(CnfFormula& f, int clause_index, const Literal& lit) {
  auto& lits = f.clauses[static_cast<std::size_t>(clause_index)].literals;
  auto it = std::find(lits.begin(), lits.end(), lit);
  if (it == lits.end()) throw std::logic_error("literal to remove is absent");
  lits.erase(it);
}

}  // namespace

GraphPair corrupt_pair(const GraphPair& pair, Rng& rng, int max_clause_width) {
  if (pair.subset != Subset::Exp)
    throw std::invalid_argument("corrupt_pair expects an Exp pair");

  CnfFormula f = pair.unsat_formula;
  std::vector<CorruptionEdit> edits;
  const int max_additions = 500;
  while (true) {
    std::vector<int> eligible;
    for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
      const Clause& c = f.clauses[ci];
      if (c.width() < max_clause_width && c.width() < f.num_vars)
        eligible.push_back(static_cast<int>(ci));
    }
    if (eligible.empty())
      throw GenerationError("no clause can take another literal");
    int ci = eligible[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(eligible.size()) - 1))];

    std::vector<int> free_vars;
    for (int v = 0; v < f.num_vars; ++v)
      if (!f.clauses[static_cast<std::size_t>(ci)].contains_var(v))
        free_vars.push_back(v);
    int choice = rng.uniform_int(0, 2 * static_cast<int>(free_vars.size()) - 1);
    Literal lit{free_vars[static_cast<std::size_t>(choice / 2)], choice % 2 == 1};

    f.clauses[static_cast<std::size_t>(ci)].literals.push_back(lit);
    edits.push_back({ci, lit, true});
    if (static_cast<int>(edits.size()) >= 3 && solve_sat(f).satisfiable) break;
    if (static_cast<int>(edits.size()) > max_additions)
      throw GenerationError("corruption did not reach satisfiability");
  }

  // Single minimization pass in insertion order: delete an added edge exactly
  // when its deletion does not restore unsatisfiability.
  for (CorruptionEdit& e : edits) {
    CnfFormula without = f;
    remove_literal(without, e.clause_index, e.lit);
    if (solve_sat(without).satisfiable) {
      f = std::move(without);
      e.retained = false;
    }
  }

  GraphPair out = pair;
  out.subset = Subset::Corrupt;
  out.sat_formula = std::move(f);
  out.sat_graph = encode_cnf(out.sat_formula);
  out.corruption_trace = std::move(edits);
  return out;
}

bool verify_corruption_trace(const GraphPair& pair) {
  if (pair.subset != Subset::Corrupt) return false;
  if (static_cast<int>(pair.corruption_trace.size()) < 3) return false;

  CnfFormula f = pair.unsat_formula;
  if (solve_sat(f).satisfiable) return false;
  for (const CorruptionEdit& e : pair.corruption_trace)
    f.clauses[static_cast<std::size_t>(e.clause_index)].literals.push_back(e.lit);
  if (!solve_sat(f).satisfiable) return false;

  bool any_retained = false;
  for (const CorruptionEdit& e : pair.corruption_trace) {
    CnfFormula without = f;
    remove_literal(without, e.clause_index, e.lit);
    const bool sat_without = solve_sat(without).satisfiable;
    if (e.retained && sat_without) return false;   // kept but unnecessary
    if (!e.retained && !sat_without) return false; // dropped but necessary
    if (!e.retained) f = std::move(without);
    any_retained = any_retained || e.retained;
  }
  return any_retained && f == pair.sat_formula && solve_sat(f).satisfiable;
}

namespace {

std::vector<int> plan_base_sizes(const GeneratorConfig& cfg) {
  std::vector<int> sizes(static_cast<std::size_t>(cfg.num_pairs), 0);
  if (!cfg.base_graph_file.empty()) return sizes;  // unused with a pool

  double total_weight = 0;
  for (auto [nodes, weight] : cfg.planar_sizes) total_weight += weight;
  if (total_weight <= 0)
    throw std::invalid_argument("planar size weights sum to zero");

  // largest-remainder apportionment of num_pairs across the size entries
  std::vector<int> counts(cfg.planar_sizes.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  int assigned = 0;
  for (std::size_t i = 0; i < cfg.planar_sizes.size(); ++i) {
    double exact = cfg.num_pairs * cfg.planar_sizes[i].second / total_weight;
    counts[i] = static_cast<int>(exact);
    assigned += counts[i];
    remainders.push_back({-(exact - counts[i]), i});
  }
  std::sort(remainders.begin(), remainders.end());
  for (int r = 0; r < cfg.num_pairs - assigned; ++r)
    ++counts[remainders[static_cast<std::size_t>(r)].second];

  int id = 0;
  for (std::size_t i = 0; i < cfg.planar_sizes.size(); ++i)
    for (int k = 0; k < counts[i]; ++k)
      sizes[static_cast<std::size_t>(id++)] = cfg.planar_sizes[i].first;
  return sizes;
}

bool corrupt_planned(int pair_id, double fraction) {
  // Bresenham-style spacing: exactly floor(num_pairs * fraction) pairs,
  // spread evenly across ids.
  return static_cast<long long>((pair_id + 1) * fraction) !=
         static_cast<long long>(pair_id * fraction);
}

}  // namespace

Dataset generate_dataset(const GeneratorConfig& cfg) {
  cfg.validate();

  std::vector<BaseGraph> pool;
  const std::vector<BaseGraph>* pool_ptr = nullptr;
  if (!cfg.base_graph_file.empty()) {
    pool = load_base_graphs(cfg.base_graph_file);
    pool_ptr = &pool;
  }

  const std::vector<int> base_sizes = plan_base_sizes(cfg);
  Dataset ds;
  ds.pairs.resize(static_cast<std::size_t>(cfg.num_pairs));

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      int pair_id = next.fetch_add(1);
      if (pair_id >= cfg.num_pairs) break;
      try {
        Rng stream = Rng::from_seed(cfg.seed).split(static_cast<std::uint64_t>(pair_id));
        Rng gen_rng = stream.split(0);
        Rng corrupt_rng = stream.split(1);
        Rng n_rng = stream.split(2);
        const int n = n_rng.uniform_int(cfg.n_min, cfg.n_max);

        GraphPair pair =
            gen_exp_pair(n, base_sizes[static_cast<std::size_t>(pair_id)], gen_rng,
                         cfg.max_clause_width, pair_id, pool_ptr);
        pair.seed_trace.seed = cfg.seed;
        if (corrupt_planned(pair_id, cfg.corrupt_fraction)) {
          // a failed corruption resamples the underlying pair
          for (int retry = 0;; ++retry) {
            try {
              pair = corrupt_pair(pair, corrupt_rng, cfg.max_clause_width);
              break;
            } catch (const GenerationError&) {
              if (retry >= 20) throw;
              pair = gen_exp_pair(n, base_sizes[static_cast<std::size_t>(pair_id)],
                                  gen_rng, cfg.max_clause_width, pair_id, pool_ptr);
              pair.seed_trace.seed = cfg.seed;
            }
          }
        }
        ds.pairs[static_cast<std::size_t>(pair_id)] = std::move(pair);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(cfg.num_pairs);
        break;
      }
    }
  };
  if (cfg.jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < cfg.jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  ds.manifest.config = cfg;
  ds.manifest.tool_version = kToolVersion;
  for (const GraphPair& p : ds.pairs)
    ++(p.subset == Subset::Exp ? ds.manifest.exp_count : ds.manifest.corrupt_count);
  ds.manifest.pair_count = cfg.num_pairs;
  return ds;
}

}  // namespace wlrni
