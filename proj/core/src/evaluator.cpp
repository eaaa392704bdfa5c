#include "cse/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "cse/errors.hpp"
#include "cse/rng.hpp"

namespace cse {

SplitPair split(const InteractionTable& edges, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("split ratio must be in (0, 1)");
  InteractionTable merged = merge_duplicates(edges);
  const std::size_t n = merged.rows.size();
  const auto train_size = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
  if (train_size == 0 || train_size == n)
    throw DataError("split leaves an empty train or test set");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_size));
  std::sort(order.begin() + static_cast<std::ptrdiff_t>(train_size), order.end());

  SplitPair out;
  out.ratio = ratio;
  out.seed = seed;
  out.train.users = out.test.users = merged.users;
  out.train.items = out.test.items = merged.items;
  out.train.rows.reserve(train_size);
  out.test.rows.reserve(n - train_size);
  for (std::size_t i = 0; i < n; ++i)
    (i < train_size ? out.train : out.test).rows.push_back(merged.rows[order[i]]);
  return out;
}

std::vector<ScoredItem> recommend_top_n(VertexId user, const EmbeddingTriplet& model,
                                        const BipartiteGraph& train_graph, std::size_t n) {
  if (!train_graph.is_user(user)) throw std::invalid_argument("recommendations need a user vertex");
  const auto u = model.phi.row(user);
  const auto seen = train_graph.neighbors(user);
  std::vector<ScoredItem> candidates;
  candidates.reserve(train_graph.item_count());
  const VertexId first = train_graph.side_begin(Side::item);
  const VertexId last = first + static_cast<VertexId>(train_graph.item_count());
  auto next_seen = seen.begin();
  for (VertexId item = first; item < last; ++item) {
    while (next_seen != seen.end() && *next_seen < item) ++next_seen;
    if (next_seen != seen.end() && *next_seen == item) continue;
    candidates.push_back({item, score(u, model.phi.row(item))});
  }
  const auto better = [](const ScoredItem& a, const ScoredItem& b) {
    return a.score != b.score ? a.score > b.score : a.item < b.item;
  };
  const std::size_t keep = std::min(n, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), better);
  candidates.resize(keep);
  return candidates;
}

namespace {

std::vector<VertexId> sorted_unique(std::span<const VertexId> values) {
  std::vector<VertexId> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct RankStats {
  double recall;
  double average_precision;
};

// Both metrics in one pass over a sorted ground truth.
RankStats rank_stats(std::span<const VertexId> ranked, const std::vector<VertexId>& truth,
                     std::size_t n) {
  if (truth.empty()) throw std::invalid_argument("ground truth must not be empty");
  if (n == 0) throw std::invalid_argument("cutoff must be positive");
  const std::size_t depth = std::min(n, ranked.size());
  std::size_t hits = 0;
  double precision_sum = 0.0;
  for (std::size_t k = 0; k < depth; ++k) {
    if (std::binary_search(truth.begin(), truth.end(), ranked[k])) {
      ++hits;
      precision_sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  }
  const auto denom = static_cast<double>(std::min(n, truth.size()));
  return {static_cast<double>(hits) / denom, precision_sum / denom};
}

}  // namespace

double recall_at_n(std::span<const VertexId> ranked, std::span<const VertexId> truth, std::size_t n) {
  return rank_stats(ranked, sorted_unique(truth), n).recall;
}

double average_precision_at_n(std::span<const VertexId> ranked, std::span<const VertexId> truth,
                              std::size_t n) {
  return rank_stats(ranked, sorted_unique(truth), n).average_precision;
}

double map_at_n(std::span<const UserRanking> users, std::size_t n) {
  if (users.empty()) throw std::invalid_argument("mAP needs at least one user");
  double sum = 0.0;
  for (const auto& u : users) sum += average_precision_at_n(u.ranked, u.truth, n);
  return sum / static_cast<double>(users.size());
}

ColdUserPolicy parse_cold_user_policy(std::string_view name) {
  if (name == "skip") return ColdUserPolicy::skip;
  if (name == "zero") return ColdUserPolicy::zero;
  throw std::invalid_argument("unknown cold-user policy: " + std::string(name));
}

std::string_view to_string(ColdUserPolicy p) { return p == ColdUserPolicy::skip ? "skip" : "zero"; }

std::vector<EvalReport> evaluate(const EmbeddingTriplet& model, const BipartiteGraph& train_graph,
                                 const InteractionTable& test, const EvalOptions& options) {
  if (options.cutoffs.empty()) throw std::invalid_argument("at least one cutoff is required");
  for (std::size_t c : options.cutoffs)
    if (c == 0) throw std::invalid_argument("cutoffs must be positive");
  if (model.vertex_count() != train_graph.vertex_count())
    throw std::invalid_argument("model does not match the training graph");

  // Ground truth per test user, keyed by the test table's user id.
  std::map<std::uint32_t, std::vector<VertexId>> truth_by_user;
  std::unordered_map<std::uint32_t, VertexId> unknown_items;
  for (const auto& row : test.rows) {
    if (!(row.value > 0.0)) continue;
    VertexId item;
    if (auto id = train_graph.find(Side::item, test.items.key(row.item))) {
      item = *id;
    } else {
      auto [it, inserted] = unknown_items.try_emplace(
          row.item, static_cast<VertexId>(train_graph.vertex_count() + unknown_items.size()));
      item = it->second;
    }
    truth_by_user[row.user].push_back(item);
  }

  struct Task {
    std::string key;
    std::optional<VertexId> vertex;
    std::vector<VertexId> truth;
  };
  std::vector<Task> tasks;
  std::size_t skipped = 0;
  for (auto& [test_user, items] : truth_by_user) {
    const std::string& key = test.users.key(test_user);
    auto vertex = train_graph.find(Side::user, key);
    if (!vertex && options.cold_users == ColdUserPolicy::skip) {
      ++skipped;
      continue;
    }
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    tasks.push_back({key, vertex, std::move(items)});
  }
  std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
    if (a.vertex.has_value() != b.vertex.has_value()) return a.vertex.has_value();
    return a.vertex ? *a.vertex < *b.vertex : a.key < b.key;
  });

  const std::size_t depth = *std::max_element(options.cutoffs.begin(), options.cutoffs.end());
  const std::size_t ncut = options.cutoffs.size();
  std::vector<RankStats> stats(tasks.size() * ncut, RankStats{0.0, 0.0});

  auto run = [&](std::size_t begin, std::size_t end) {
    std::vector<VertexId> ranked;
    for (std::size_t t = begin; t < end; ++t) {
      if (!tasks[t].vertex) continue;
      const VertexId user = *tasks[t].vertex;
      const auto top = recommend_top_n(user, model, train_graph, depth);
      ranked.clear();
      for (const auto& s : top) {
        if (train_graph.has_edge(user, s.item))
          throw std::logic_error("recommended a training item for " + tasks[t].key);
        ranked.push_back(s.item);
      }
      for (std::size_t c = 0; c < ncut; ++c)
        stats[t * ncut + c] = rank_stats(ranked, tasks[t].truth, options.cutoffs[c]);
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, tasks.size()));
  if (workers <= 1) {
    run(0, tasks.size());
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (tasks.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(tasks.size(), w * chunk);
      const std::size_t end = std::min(tasks.size(), begin + chunk);
      threads.emplace_back(run, begin, end);
    }
    for (auto& th : threads) th.join();
  }

  std::vector<EvalReport> reports(ncut);
  for (std::size_t c = 0; c < ncut; ++c) {
    EvalReport& r = reports[c];
    r.cutoff = options.cutoffs[c];
    r.users_evaluated = tasks.size();
    r.users_skipped = skipped;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      const RankStats& s = stats[t * ncut + c];
      r.recall += s.recall;
      r.map += s.average_precision;
      if (options.keep_per_user)
        r.per_user.push_back({tasks[t].key, tasks[t].truth.size(), s.recall, s.average_precision});
    }
    if (!tasks.empty()) {
      r.recall /= static_cast<double>(tasks.size());
      r.map /= static_cast<double>(tasks.size());
    }
  }
  return reports;
}

void write_report_text(std::ostream& out, std::span<const EvalReport> reports) {
  for (const auto& r : reports) {
    out << "Recall@" << r.cutoff << ' ' << format_number(r.recall) << '\n'
        << "mAP@" << r.cutoff << ' ' << format_number(r.map) << '\n'
        << "users_evaluated " << r.users_evaluated << '\n'
        << "users_skipped " << r.users_skipped << '\n';
  }
}

void write_report_records(std::ostream& out, std::span<const EvalReport> reports,
                          std::uint64_t split_seed) {
  for (const auto& r : reports) {
    out << "metric=recall cutoff=" << r.cutoff << " value=" << format_number(r.recall)
        << " split_seed=" << split_seed << '\n';
    out << "metric=map cutoff=" << r.cutoff << " value=" << format_number(r.map)
        << " split_seed=" << split_seed << '\n';
  }
}

}  // namespace cse
