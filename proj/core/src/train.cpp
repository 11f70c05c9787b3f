#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "wlrni/nn.hpp"

namespace wlrni {

std::vector<DataPair> to_data_pairs(const std::vector<GraphPair>& pairs) {
  std::vector<DataPair> out;
  out.reserve(pairs.size());
  for (const GraphPair& p : pairs)
    out.push_back({p.pair_id, p.subset, p.sat_graph, p.unsat_graph});
  return out;
}

namespace {

struct Item {
  const TypedGraph* graph;
  int label;
  int pair_id;
  Subset subset;
};

std::vector<Item> flatten(const std::vector<DataPair>& pairs) {
  std::vector<Item> items;
  items.reserve(2 * pairs.size());
  for (const DataPair& p : pairs) {
    items.push_back({&p.sat_graph, 1, p.pair_id, p.subset});
    items.push_back({&p.unsat_graph, 0, p.pair_id, p.subset});
  }
  return items;
}

void shuffle_indices(std::vector<int>& idx, Rng& rng) {
  for (int i = static_cast<int>(idx.size()) - 1; i > 0; --i) {
    int j = rng.uniform_int(0, i);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
}

int predict(const std::array<double, 2>& logits) {
  return logits[1] > logits[0] ? 1 : 0;
}

struct EvalResult {
  double acc = 0.0;
  double acc_exp = -1.0;
  double acc_corrupt = -1.0;
  double max_pair_gap = -1.0;
};

EvalResult evaluate(const std::vector<Item>& items, const ModelParams& params,
                    const ModelConfig& config, Rng& rni_rng) {
  EvalResult res;
  if (items.empty()) return res;
  int correct = 0, correct_exp = 0, correct_corrupt = 0;
  int total_exp = 0, total_corrupt = 0;
  std::map<int, std::array<std::array<double, 2>, 2>> pair_logits;
  std::map<int, int> pair_roles_seen;
  for (const Item& item : items) {
    Matrix features = init_features(*item.graph, config.d, config.rni_fraction,
                                    config.scheme, params.type_embedding, rni_rng);
    std::array<double, 2> logits =
        forward(*item.graph, features, params, config.activation);
    const bool ok = predict(logits) == item.label;
    correct += ok;
    if (item.subset == Subset::Exp) {
      ++total_exp;
      correct_exp += ok;
    } else {
      ++total_corrupt;
      correct_corrupt += ok;
    }
    pair_logits[item.pair_id][static_cast<std::size_t>(item.label)] = logits;
    pair_roles_seen[item.pair_id] |= (item.label == 1 ? 1 : 2);
  }
  res.acc = static_cast<double>(correct) / static_cast<double>(items.size());
  if (total_exp > 0) res.acc_exp = static_cast<double>(correct_exp) / total_exp;
  if (total_corrupt > 0)
    res.acc_corrupt = static_cast<double>(correct_corrupt) / total_corrupt;

  double gap = -1.0;
  for (const auto& [pid, roles] : pair_roles_seen) {
    if (roles != 3) continue;  // need both graphs of the pair
    const auto& lg = pair_logits[pid];
    const double g = std::max(std::fabs(lg[0][0] - lg[1][0]),
                              std::fabs(lg[0][1] - lg[1][1]));
    gap = std::max(gap, g);
  }
  res.max_pair_gap = gap;
  return res;
}

}  // namespace

FoldRecord train_fold(const std::vector<DataPair>& train_pairs,
                      const std::vector<DataPair>& test_pairs,
                      const ModelConfig& config, int fold_index) {
  config.validate();
  if (train_pairs.empty()) throw std::invalid_argument("empty training split");
  for (const DataPair& p : train_pairs)
    for (const DataPair& q : test_pairs)
      if (p.pair_id == q.pair_id)
        throw std::invalid_argument("pair " + std::to_string(p.pair_id) +
                                    " appears in both splits");

  const auto t_start = std::chrono::steady_clock::now();
  Rng fold_stream =
      Rng::from_seed(config.seed).split(1 + static_cast<std::uint64_t>(fold_index));
  Rng init_rng = fold_stream.split(0);
  Rng shuffle_rng = fold_stream.split(1);
  Rng train_rni_rng = fold_stream.split(2);
  Rng eval_rni_rng = fold_stream.split(3);

  const std::vector<Item> train_items = flatten(train_pairs);
  const std::vector<Item> test_items = flatten(test_pairs);

  ModelParams params = ModelParams::init(config, init_rng);
  ModelParams grads = ModelParams::zeros_like(params);
  AdamState opt = AdamState::zeros_like(params);

  FoldRecord record;
  record.fold = fold_index;
  record.seed = config.seed;
  std::vector<int> order(train_items.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<std::array<double, 2>> logits_buf;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_indices(order, shuffle_rng);
    double loss_sum = 0.0;
    int correct = 0;
    for (int idx : order) {
      const Item& item = train_items[static_cast<std::size_t>(idx)];
      Matrix features =
          init_features(*item.graph, config.d, config.rni_fraction, config.scheme,
                        params.type_embedding, train_rni_rng);
      BatchItem batch{item.graph, &features, item.label};
      for (Matrix* t : grads.tensors()) t->fill(0.0);
      logits_buf.clear();
      loss_sum += loss_and_grad({&batch, 1}, params, config.activation, grads,
                                &logits_buf);
      correct += predict(logits_buf[0]) == item.label;
      adam_step(params, grads, opt, config.lr);
    }

    EpochStat stat;
    stat.epoch = epoch;
    stat.train_loss = loss_sum / static_cast<double>(train_items.size());
    stat.train_acc =
        static_cast<double>(correct) / static_cast<double>(train_items.size());
    EvalResult ev = evaluate(test_items, params, config, eval_rni_rng);
    stat.test_acc = ev.acc;
    stat.test_acc_exp = ev.acc_exp;
    stat.test_acc_corrupt = ev.acc_corrupt;
    stat.max_pair_gap = ev.max_pair_gap;
    record.epochs.push_back(stat);
  }

  const EpochStat& last = record.epochs.back();
  record.final_test_acc = last.test_acc;
  record.final_test_acc_exp = last.test_acc_exp;
  record.final_test_acc_corrupt = last.test_acc_corrupt;
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return record;
}

TrainRecord cross_validate(const std::vector<DataPair>& pairs,
                           const ModelConfig& config, int max_folds) {
  config.validate();
  if (static_cast<int>(pairs.size()) < config.folds)
    throw std::invalid_argument("fewer pairs than folds");
  const auto t_start = std::chrono::steady_clock::now();

  // pair-level fold assignment: seeded shuffle, then round robin
  std::vector<int> perm(pairs.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rng fold_assign_rng = Rng::from_seed(config.seed).split(0);
  shuffle_indices(perm, fold_assign_rng);
  std::vector<int> fold_of(pairs.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    fold_of[static_cast<std::size_t>(perm[i])] = static_cast<int>(i) % config.folds;

  const int folds_to_run =
      max_folds > 0 ? std::min(max_folds, config.folds) : config.folds;

  TrainRecord record;
  record.config = config;
  record.folds.resize(static_cast<std::size_t>(folds_to_run));

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      int f = next.fetch_add(1);
      if (f >= folds_to_run) break;
      try {
        std::vector<DataPair> train_split, test_split;
        for (std::size_t i = 0; i < pairs.size(); ++i)
          (fold_of[i] == f ? test_split : train_split).push_back(pairs[i]);
        record.folds[static_cast<std::size_t>(f)] =
            train_fold(train_split, test_split, config, f);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(folds_to_run);
        break;
      }
    }
  };
  if (config.jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < config.jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  double sum = 0.0, sum_sq = 0.0;
  for (const FoldRecord& f : record.folds) {
    sum += f.final_test_acc;
    sum_sq += f.final_test_acc * f.final_test_acc;
  }
  const double k = static_cast<double>(record.folds.size());
  record.mean_final_acc = sum / k;
  record.std_final_acc =
      k > 1 ? std::sqrt(std::max(0.0, sum_sq / k - record.mean_final_acc *
                                                       record.mean_final_acc))
            : 0.0;

  record.epoch_acc_mean.resize(static_cast<std::size_t>(config.epochs));
  record.epoch_acc_std.resize(static_cast<std::size_t>(config.epochs));
  for (int e = 0; e < config.epochs; ++e) {
    double s = 0.0, s2 = 0.0;
    for (const FoldRecord& f : record.folds) {
      const double a = f.epochs[static_cast<std::size_t>(e)].test_acc;
      s += a;
      s2 += a * a;
    }
    const double mean = s / k;
    record.epoch_acc_mean[static_cast<std::size_t>(e)] = mean;
    record.epoch_acc_std[static_cast<std::size_t>(e)] =
        k > 1 ? std::sqrt(std::max(0.0, s2 / k - mean * mean)) : 0.0;
  }
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return record;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string opt_fmt(double v) { return v < 0 ? std::string() : fmt(v); }

}  // namespace

std::string metrics_to_string(const TrainRecord& record, bool include_timestamp) {
  std::ostringstream out;
  out << "# wlrni metrics v1\n";
  if (include_timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
    out << "# generated_at: " << buf << "\n";
  }
  const ModelConfig& c = record.config;
  out << "# config: layers=" << c.layers << " d=" << c.d << " activation="
      << (c.activation == Activation::ELU ? "elu" : "tanh")
      << " rni_fraction=" << fmt(c.rni_fraction) << " scheme="
      << static_cast<int>(c.scheme) << " lr=" << fmt(c.lr)
      << " epochs=" << c.epochs << " folds=" << c.folds << " seed=" << c.seed
      << "\n";
  out << "epoch,fold,split,loss,accuracy,acc_exp,acc_corrupt,pair_gap\n";
  for (const FoldRecord& f : record.folds) {
    for (const EpochStat& e : f.epochs) {
      out << e.epoch << "," << f.fold << ",train," << fmt(e.train_loss) << ","
          << fmt(e.train_acc) << ",,,\n";
      out << e.epoch << "," << f.fold << ",test,," << fmt(e.test_acc) << ","
          << opt_fmt(e.test_acc_exp) << "," << opt_fmt(e.test_acc_corrupt) << ","
          << opt_fmt(e.max_pair_gap) << "\n";
    }
  }
  for (std::size_t e = 0; e < record.epoch_acc_mean.size(); ++e) {
    out << (e + 1) << ",-1,cv_mean,," << fmt(record.epoch_acc_mean[e]) << ",,,\n";
    out << (e + 1) << ",-1,cv_std,," << fmt(record.epoch_acc_std[e]) << ",,,\n";
  }
  out << "# summary: folds=" << record.folds.size()
      << " final_test_acc_mean=" << fmt(record.mean_final_acc)
      << " final_test_acc_std=" << fmt(record.std_final_acc) << "\n";
  return out.str();
}

void write_metrics(const TrainRecord& record, const std::string& path,
                   bool include_timestamp) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write metrics file: " + path);
  out << metrics_to_string(record, include_timestamp);
}

}  // namespace wlrni
