#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cse/alias_table.hpp"
#include "cse/interactions.hpp"
#include "cse/rng.hpp"

namespace cse {

// Dense vertex index: users occupy [0, |U|), items [|U|, |U|+|I|).
using VertexId = std::uint32_t;

enum class Side : std::uint8_t { user, item };

constexpr Side opposite(Side s) { return s == Side::user ? Side::item : Side::user; }

// How negative vertices are drawn from one side of the graph.
enum class NegativeDistribution { degree, uniform };

NegativeDistribution parse_negative_distribution(std::string_view name);
std::string_view to_string(NegativeDistribution d);

struct Edge {
  VertexId user;
  VertexId item;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted user-item bipartite graph with constant-time samplers for edges,
/// neighbors (one alias row per vertex) and per-side negatives.
///
/// Immutable after build_graph(); all sampling methods are const and safe to
/// call concurrently as long as each thread owns its Rng.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  std::size_t user_count() const noexcept { return user_count_; }
  std::size_t item_count() const noexcept { return item_count_; }
  std::size_t vertex_count() const noexcept { return user_count_ + item_count_; }
  std::size_t edge_count() const noexcept { return edge_user_.size(); }
  double total_weight() const noexcept { return total_weight_; }

  Side side(VertexId v) const noexcept { return v < user_count_ ? Side::user : Side::item; }
  bool is_user(VertexId v) const noexcept { return v < user_count_; }
  VertexId item_vertex(std::size_t item_index) const noexcept {
    return static_cast<VertexId>(user_count_ + item_index);
  }
  // First vertex id and count of one side.
  VertexId side_begin(Side s) const noexcept {
    return s == Side::user ? 0 : static_cast<VertexId>(user_count_);
  }
  std::size_t side_size(Side s) const noexcept {
    return s == Side::user ? user_count_ : item_count_;
  }

  // Neighbors sorted by id, with matching weights.
  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_ids_.data() + adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]};
  }
  std::span<const double> neighbor_weights(VertexId v) const {
    return {adj_weights_.data() + adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]};
  }
  std::size_t degree(VertexId v) const { return adj_offsets_[v + 1] - adj_offsets_[v]; }
  double weighted_degree(VertexId v) const { return strength_[v]; }
  bool has_edge(VertexId user, VertexId item) const;
  // Weight of (user, item), 0 when absent.
  double edge_weight(VertexId user, VertexId item) const;

  Edge edge(std::size_t e) const { return {edge_user_[e], edge_item_[e]}; }
  double edge_weight(std::size_t e) const { return edge_weight_[e]; }

  const std::string& key(VertexId v) const;
  std::optional<VertexId> find(Side s, std::string_view key) const;
  // Keys in vertex id order (users, then items).
  std::vector<std::string> vertex_keys() const;

  // Observed edge with probability weight(e) / total_weight().
  template <class Probe = NullDrawProbe>
  Edge sample_edge(Rng& rng, Probe&& probe = {}) const {
    return edge(edge_sampler_.draw(rng, probe));
  }

  // Neighbor of v with probability proportional to the edge weight. v must
  // have at least one neighbor.
  template <class Probe = NullDrawProbe>
  VertexId sample_neighbor(VertexId v, Rng& rng, Probe&& probe = {}) const {
    return adj_ids_[adj_offsets_[v] + neighbor_sampler_.draw(v, rng, probe)];
  }

  // Fills `out` with W^1..W^k of a weighted walk from `start` (k = out.size()).
  void random_walk(VertexId start, std::span<VertexId> out, Rng& rng) const {
    VertexId current = start;
    for (auto& step : out) {
      current = sample_neighbor(current, rng);
      step = current;
    }
  }
  std::vector<VertexId> random_walk(VertexId start, std::size_t k, Rng& rng) const;

  // Vertex of side `s` drawn from the whole side: proportional to weighted
  // degree, or uniformly. Observed neighbors are not excluded.
  template <class Probe = NullDrawProbe>
  VertexId sample_negative(Side s, Rng& rng,
                           NegativeDistribution dist = NegativeDistribution::degree,
                           Probe&& probe = {}) const {
    const VertexId base = side_begin(s);
    if (dist == NegativeDistribution::uniform)
      return base + static_cast<VertexId>(rng.below(side_size(s)));
    const AliasTable& table = s == Side::user ? user_negatives_ : item_negatives_;
    return base + table.draw(rng, probe);
  }

  // Probability that sample_neighbor(v) returns its i-th neighbor, as
  // encoded in the alias row.
  double neighbor_probability(VertexId v, std::size_t position) const {
    return neighbor_sampler_.probability(v, position);
  }
  double edge_probability(std::size_t e) const { return edge_sampler_.probability(e); }
  double negative_probability(Side s, std::size_t index_in_side) const {
    return (s == Side::user ? user_negatives_ : item_negatives_).probability(index_in_side);
  }

  // Throws std::logic_error when bipartiteness, symmetry or edge accounting is violated.
  void check_invariants() const;

  friend BipartiteGraph build_graph(const InteractionTable& table);

 private:
  std::size_t user_count_ = 0;
  std::size_t item_count_ = 0;
  double total_weight_ = 0.0;

  std::vector<std::string> user_keys_;
  std::vector<std::string> item_keys_;
  KeyIndex user_index_;
  KeyIndex item_index_;

  std::vector<VertexId> edge_user_;
  std::vector<VertexId> edge_item_;
  std::vector<double> edge_weight_;

  std::vector<std::size_t> adj_offsets_;
  std::vector<VertexId> adj_ids_;
  std::vector<double> adj_weights_;
  std::vector<double> strength_;

  AliasTable edge_sampler_;
  AliasRows neighbor_sampler_;
  AliasTable user_negatives_;
  AliasTable item_negatives_;
};

/// Builds the graph from interaction rows. Duplicate pairs are merged by
/// summing; keys with no remaining edge are dropped from the id space and
/// the surviving keys keep the table's relative order.
///
/// Throws DataError for an empty table or a negative weight.
BipartiteGraph build_graph(const InteractionTable& table);

struct GraphStats {
  std::size_t users = 0;
  std::size_t items = 0;
  std::size_t edges = 0;
  double total_weight = 0.0;
  double density = 0.0;
};

GraphStats graph_stats(const BipartiteGraph& graph);

// `name value` lines.
void write_graph_stats(std::ostream& out, const GraphStats& stats);

}  // namespace cse
