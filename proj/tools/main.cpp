#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wlrni/dataset_io.hpp"
#include "wlrni/nn.hpp"
#include "wlrni/rni.hpp"
#include "wlrni/version.hpp"

namespace {

using namespace wlrni;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("WLRNI_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric WLRNI_SEED\n";
    }
  }
  return 0;
}

// Fixed learning rates per randomization level, used when --lr is not given:
// no randomization 1e-4, full randomization 5e-4, partial 2e-4.
double default_lr(double rni_fraction) {
  if (rni_fraction <= 0.0) return 1e-4;
  if (rni_fraction >= 1.0) return 5e-4;
  return 2e-4;
}

int run_gen(const GeneratorConfig& cfg, const std::string& out_path) {
  Dataset ds = generate_dataset(cfg);
  save_dataset(ds, out_path);
  std::cout << "generated " << ds.manifest.pair_count << " pairs ("
            << ds.manifest.exp_count << " exp, " << ds.manifest.corrupt_count
            << " corrupt), " << 2 * ds.manifest.pair_count << " graph records\n"
            << "dataset:  " << out_path << "\n"
            << "manifest: " << out_path << ".manifest.json\n"
            << "checksum: " << ds.manifest.checksum_fnv1a64 << "\n";
  return 0;
}

int run_verify(const std::string& data_path, int jobs) {
  std::vector<LoadedPair> loaded = load_dataset(data_path);
  std::vector<GraphPair> pairs;
  pairs.reserve(loaded.size());
  for (const LoadedPair& lp : loaded) pairs.push_back(to_graph_pair(lp));
  ValidationReport report = validate_pairs(pairs, jobs);

  int shown = 0;
  for (const PairFlags& f : report.pairs) {
    if (f.all_ok()) continue;
    if (shown++ >= 20) {
      std::cout << "  ... further failures suppressed\n";
      break;
    }
    std::cout << "  pair " << f.pair_id << " FAILED:"
              << (f.sat_labels_ok ? "" : " sat_labels")
              << (f.non_isomorphic ? "" : " isomorphic");
    if (f.wl1_indistinguishable && !*f.wl1_indistinguishable)
      std::cout << " wl1_distinguishable";
    if (f.fwl2_distinguishable && !*f.fwl2_distinguishable)
      std::cout << " fwl2_indistinguishable";
    if (f.wl1_distinguishable && !*f.wl1_distinguishable)
      std::cout << " wl1_indistinguishable";
    std::cout << "\n";
  }
  std::cout << "pairs:    " << report.pairs.size() << " (" << report.exp_count
            << " exp, " << report.corrupt_count << " corrupt)\n"
            << "passing:  " << (report.pairs.size() - report.failures) << "/"
            << report.pairs.size() << "\n"
            << "verdict:  " << (report.valid() ? "VALID" : "INVALID") << "\n";
  return report.valid() ? 0 : 1;
}

int run_train(const std::string& data_path, ModelConfig config,
              const std::string& metrics_path, int max_folds, bool no_timestamps) {
  std::vector<LoadedPair> loaded = load_dataset(data_path);
  std::vector<DataPair> pairs;
  pairs.reserve(loaded.size());
  for (LoadedPair& lp : loaded)
    pairs.push_back({lp.pair_id, lp.subset, std::move(lp.sat_graph),
                     std::move(lp.unsat_graph)});

  TrainRecord record = cross_validate(pairs, config, max_folds);
  if (!metrics_path.empty()) write_metrics(record, metrics_path, !no_timestamps);

  std::cout << "folds trained: " << record.folds.size() << " of " << config.folds
            << "\n";
  for (const FoldRecord& f : record.folds) {
    std::cout << "  fold " << f.fold << ": final test acc "
              << 100.0 * f.final_test_acc << "%";
    if (f.final_test_acc_exp >= 0)
      std::cout << " (exp " << 100.0 * f.final_test_acc_exp << "%";
    if (f.final_test_acc_corrupt >= 0)
      std::cout << ", corrupt " << 100.0 * f.final_test_acc_corrupt << "%";
    if (f.final_test_acc_exp >= 0) std::cout << ")";
    std::cout << " [" << f.wall_seconds << "s]\n";
  }
  std::cout << "final test accuracy: " << 100.0 * record.mean_final_acc << " +- "
            << 100.0 * record.std_final_acc << " %\n";
  if (!metrics_path.empty()) std::cout << "metrics: " << metrics_path << "\n";
  return 0;
}

int run_lemma(int n, double delta, long long trials, std::uint64_t seed) {
  LemmaParams params = LemmaParams::make(n, delta);
  Rng rng = Rng::from_seed(seed).split(0x1E77A);
  RateEstimate est = individualization_rate(params, trials, rng);
  const double bound = 1.0 - delta;
  std::cout << "n=" << params.n << " delta=" << params.delta << " c=" << params.c
            << " k=" << params.k << " thresholds_per_node=" << params.thresholds
            << "\n"
            << "trials:  " << est.trials << "\n"
            << "rate:    " << est.rate << " (" << est.successes << " successes)\n"
            << "wilson95: [" << est.wilson_low << ", " << est.wilson_high << "]\n"
            << "bound:   " << bound << " -> "
            << (est.rate >= bound ? "PASS" : "FAIL") << "\n";
  return est.rate >= bound ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EXP/CEXP graph-pair dataset toolkit: generation, certification, "
               "GNN training with random node initialization, and the "
               "individualization-rate checker"};
  app.set_version_flag("--version", std::string("wlrni ") + kToolVersion);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a certified dataset");
  GeneratorConfig gcfg;
  gcfg.seed = default_seed();
  std::string gen_out = "dataset.jsonl";
  std::string planar_import;
  int planar_12 = 500, planar_15 = 100;
  gen->add_option("--pairs", gcfg.num_pairs, "Number of graph pairs")
      ->capture_default_str();
  gen->add_option("--n-min", gcfg.n_min, "Minimum core half-size")
      ->capture_default_str();
  gen->add_option("--n-max", gcfg.n_max, "Maximum core half-size")
      ->capture_default_str();
  gen->add_option("--corrupt-fraction", gcfg.corrupt_fraction,
                  "Fraction of pairs to corrupt (0 -> EXP, 0.5 -> CEXP)")
      ->capture_default_str();
  gen->add_option("--planar-12-weight", planar_12,
                  "Weight of 12-node planar bases")
      ->capture_default_str();
  gen->add_option("--planar-15-weight", planar_15,
                  "Weight of 15-node planar bases")
      ->capture_default_str();
  gen->add_option("--max-clause-width", gcfg.max_clause_width,
                  "Maximum disjunction width")
      ->capture_default_str();
  gen->add_option("--planar-import", planar_import,
                  "Base-graph pool file ('V E' header + edge lines); overrides "
                  "the built-in planar generator");
  gen->add_option("--seed", gcfg.seed, "RNG seed (env WLRNI_SEED)")
      ->capture_default_str();
  gen->add_option("--jobs", gcfg.jobs, "Parallel generation workers")
      ->capture_default_str();
  gen->add_option("--out", gen_out, "Output dataset path (JSON lines)")
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Re-certify a dataset file");
  std::string verify_data;
  int verify_jobs = 1;
  verify->add_option("--data", verify_data, "Dataset path")->required();
  verify->add_option("--jobs", verify_jobs, "Parallel verification workers")
      ->capture_default_str();

  // train
  auto* train = app.add_subcommand("train", "Cross-validate a model on a dataset");
  std::string train_data, metrics_out;
  ModelConfig mcfg;
  mcfg.seed = default_seed();
  std::string activation = "elu", scheme = "normal";
  double lr = -1.0;
  int max_folds = -1;
  bool no_timestamps = false;
  train->add_option("--data", train_data, "Dataset path")->required();
  train->add_option("--layers", mcfg.layers, "Message passing iterations")
      ->capture_default_str();
  train->add_option("--dim", mcfg.d, "Embedding dimension")->capture_default_str();
  train->add_option("--rni-fraction", mcfg.rni_fraction,
                    "Fraction of randomized feature dimensions")
      ->capture_default_str();
  train->add_option("--scheme", scheme,
                    "RNI distribution: normal|uniform|xavier-normal|xavier-uniform")
      ->capture_default_str();
  train->add_option("--activation", activation, "elu|tanh")->capture_default_str();
  train->add_option("--lr", lr,
                    "Adam learning rate (default depends on --rni-fraction)");
  train->add_option("--epochs", mcfg.epochs, "Training epochs per fold")
      ->capture_default_str();
  train->add_option("--folds", mcfg.folds, "Cross-validation folds")
      ->capture_default_str();
  train->add_option("--max-folds", max_folds,
                    "Train only the first k folds (single-split runs)");
  train->add_option("--seed", mcfg.seed, "RNG seed (env WLRNI_SEED)")
      ->capture_default_str();
  train->add_option("--jobs", mcfg.jobs, "Parallel fold workers")
      ->capture_default_str();
  train->add_option("--metrics-out", metrics_out, "Metrics file path");
  train->add_flag("--no-timestamps", no_timestamps,
                  "Omit timestamps from the metrics file");

  // lemma
  auto* lemma = app.add_subcommand(
      "lemma", "Monte-Carlo check of the individualization rate bound 1-delta");
  int lemma_n = 3;
  double lemma_delta = 0.5;
  long long lemma_trials = 2000;
  std::uint64_t lemma_seed = default_seed();
  lemma->add_option("--n", lemma_n, "Node count")->capture_default_str();
  lemma->add_option("--delta", lemma_delta, "Failure probability bound")
      ->capture_default_str();
  lemma->add_option("--trials", lemma_trials, "Monte-Carlo trials")
      ->capture_default_str();
  lemma->add_option("--seed", lemma_seed, "RNG seed (env WLRNI_SEED)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, usage errors exit 2
  }

  try {
    if (gen->parsed()) {
      gcfg.planar_sizes = {{12, planar_12}, {15, planar_15}};
      gcfg.base_graph_file = planar_import;
      return run_gen(gcfg, gen_out);
    }
    if (verify->parsed()) return run_verify(verify_data, verify_jobs);
    if (train->parsed()) {
      if (activation == "elu")
        mcfg.activation = Activation::ELU;
      else if (activation == "tanh")
        mcfg.activation = Activation::Tanh;
      else
        throw std::invalid_argument("unknown activation: " + activation);
      if (scheme == "normal")
        mcfg.scheme = InitScheme::Normal01;
      else if (scheme == "uniform")
        mcfg.scheme = InitScheme::UniformPM1;
      else if (scheme == "xavier-normal")
        mcfg.scheme = InitScheme::XavierNormal;
      else if (scheme == "xavier-uniform")
        mcfg.scheme = InitScheme::XavierUniform;
      else
        throw std::invalid_argument("unknown scheme: " + scheme);
      mcfg.lr = lr > 0 ? lr : default_lr(mcfg.rni_fraction);
      return run_train(train_data, mcfg, metrics_out, max_folds, no_timestamps);
    }
    if (lemma->parsed())
      return run_lemma(lemma_n, lemma_delta, lemma_trials, lemma_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
