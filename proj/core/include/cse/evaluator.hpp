#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cse/embedding.hpp"
#include "cse/graph.hpp"
#include "cse/interactions.hpp"

namespace cse {

struct SplitPair {
  InteractionTable train;
  InteractionTable test;
  double ratio = 0.8;
  std::uint64_t seed = 0;
};

/// Uniform edge-level split: round(ratio * |E|) merged edges go to train,
/// the rest to test. Both halves keep the input's key dictionaries.
/// Throws std::invalid_argument for ratio outside (0, 1) and DataError when
/// either half would be empty.
SplitPair split(const InteractionTable& edges, double ratio, std::uint64_t seed);

struct ScoredItem {
  VertexId item;
  float score;

  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

/// Top-n items for `user` by dot product of phi rows, excluding the user's
/// neighbors in `train_graph`. Ties go to the lower item id. Returns fewer
/// than n entries when fewer candidates exist.
std::vector<ScoredItem> recommend_top_n(VertexId user, const EmbeddingTriplet& model,
                                        const BipartiteGraph& train_graph, std::size_t n);

// Hits among the first n of `ranked`, divided by min(n, |truth|).
// `truth` must be non-empty; order and duplicates do not matter.
double recall_at_n(std::span<const VertexId> ranked, std::span<const VertexId> truth, std::size_t n);

// sum_{k<=n} P(k) * [r_k in truth] / min(n, |truth|), P(k) = hits in top k / k.
double average_precision_at_n(std::span<const VertexId> ranked, std::span<const VertexId> truth,
                              std::size_t n);

struct UserRanking {
  std::vector<VertexId> ranked;
  std::vector<VertexId> truth;
};

// Mean average precision over users; throws std::invalid_argument when empty.
double map_at_n(std::span<const UserRanking> users, std::size_t n);

// Users with test edges but no training edge are skipped, or scored 0.
enum class ColdUserPolicy { skip, zero };

ColdUserPolicy parse_cold_user_policy(std::string_view name);
std::string_view to_string(ColdUserPolicy p);

struct EvalOptions {
  std::vector<std::size_t> cutoffs{10};
  ColdUserPolicy cold_users = ColdUserPolicy::skip;
  std::size_t workers = 1;
  bool keep_per_user = false;
};

struct UserEvalRecord {
  std::string user;
  std::size_t truth_size = 0;
  double recall = 0.0;
  double average_precision = 0.0;
};

struct EvalReport {
  std::size_t cutoff = 10;
  double recall = 0.0;
  double map = 0.0;
  std::size_t users_evaluated = 0;
  std::size_t users_skipped = 0;
  std::vector<UserEvalRecord> per_user;
};

/// One report per cutoff. Test items unknown to the training graph stay in
/// the ground truth and can never be hit.
std::vector<EvalReport> evaluate(const EmbeddingTriplet& model, const BipartiteGraph& train_graph,
                                 const InteractionTable& test, const EvalOptions& options = {});

void write_report_text(std::ostream& out, std::span<const EvalReport> reports);

// `metric=<name> cutoff=<n> value=<v> split_seed=<seed>` per metric.
void write_report_records(std::ostream& out, std::span<const EvalReport> reports,
                          std::uint64_t split_seed);

}  // namespace cse
