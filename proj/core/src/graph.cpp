#include "cse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cse/errors.hpp"

namespace cse {

NegativeDistribution parse_negative_distribution(std::string_view name) {
  if (name == "degree") return NegativeDistribution::degree;
  if (name == "uniform") return NegativeDistribution::uniform;
  throw std::invalid_argument("unknown negative distribution: " + std::string(name));
}

std::string_view to_string(NegativeDistribution d) {
  return d == NegativeDistribution::degree ? "degree" : "uniform";
}

BipartiteGraph build_graph(const InteractionTable& table) {
  if (table.rows.empty()) throw DataError("cannot build a graph from an empty table");
  for (const auto& row : table.rows) {
    if (!std::isfinite(row.value) || row.value < 0.0)
      throw DataError("edge weights must be finite and non-negative");
  }

  InteractionTable merged = merge_duplicates(table);
  std::erase_if(merged.rows, [](const RawInteraction& r) { return !(r.value > 0.0); });
  if (merged.rows.empty()) throw DataError("no edge with positive weight");

  BipartiteGraph g;

  // Dense ids for keys that still have an edge, in table order.
  constexpr std::uint32_t kUnused = ~0u;
  std::vector<std::uint32_t> user_map(merged.users.size(), kUnused);
  std::vector<std::uint32_t> item_map(merged.items.size(), kUnused);
  for (const auto& row : merged.rows) {
    user_map[row.user] = 0;
    item_map[row.item] = 0;
  }
  for (std::uint32_t id = 0; id < user_map.size(); ++id) {
    if (user_map[id] == kUnused) continue;
    user_map[id] = static_cast<std::uint32_t>(g.user_keys_.size());
    g.user_keys_.push_back(merged.users.key(id));
    g.user_index_.intern(merged.users.key(id));
  }
  for (std::uint32_t id = 0; id < item_map.size(); ++id) {
    if (item_map[id] == kUnused) continue;
    item_map[id] = static_cast<std::uint32_t>(g.item_keys_.size());
    g.item_keys_.push_back(merged.items.key(id));
    g.item_index_.intern(merged.items.key(id));
  }
  g.user_count_ = g.user_keys_.size();
  g.item_count_ = g.item_keys_.size();
  const std::size_t n = g.vertex_count();

  const std::size_t m = merged.rows.size();
  g.edge_user_.reserve(m);
  g.edge_item_.reserve(m);
  g.edge_weight_.reserve(m);
  for (const auto& row : merged.rows) {
    g.edge_user_.push_back(user_map[row.user]);
    g.edge_item_.push_back(static_cast<VertexId>(g.user_count_ + item_map[row.item]));
    g.edge_weight_.push_back(row.value);
    g.total_weight_ += row.value;
  }

  // Symmetric CSR adjacency, each row sorted by neighbor id.
  g.adj_offsets_.assign(n + 1, 0);
  for (std::size_t e = 0; e < m; ++e) {
    ++g.adj_offsets_[g.edge_user_[e] + 1];
    ++g.adj_offsets_[g.edge_item_[e] + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.adj_offsets_[v + 1] += g.adj_offsets_[v];
  g.adj_ids_.resize(2 * m);
  g.adj_weights_.resize(2 * m);
  std::vector<std::size_t> cursor(g.adj_offsets_.begin(), g.adj_offsets_.end() - 1);
  for (std::size_t e = 0; e < m; ++e) {
    const VertexId u = g.edge_user_[e];
    const VertexId i = g.edge_item_[e];
    g.adj_ids_[cursor[u]] = i;
    g.adj_weights_[cursor[u]++] = g.edge_weight_[e];
    g.adj_ids_[cursor[i]] = u;
    g.adj_weights_[cursor[i]++] = g.edge_weight_[e];
  }
  std::vector<std::pair<VertexId, double>> scratch;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t begin = g.adj_offsets_[v];
    const std::size_t end = g.adj_offsets_[v + 1];
    scratch.clear();
    for (std::size_t p = begin; p < end; ++p) scratch.emplace_back(g.adj_ids_[p], g.adj_weights_[p]);
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t p = begin; p < end; ++p) {
      g.adj_ids_[p] = scratch[p - begin].first;
      g.adj_weights_[p] = scratch[p - begin].second;
    }
  }

  g.strength_.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (double w : g.neighbor_weights(static_cast<VertexId>(v))) g.strength_[v] += w;
  }

  g.edge_sampler_ = AliasTable(g.edge_weight_);
  g.neighbor_sampler_ = AliasRows(g.adj_offsets_, g.adj_weights_);
  g.user_negatives_ =
      AliasTable(std::span<const double>(g.strength_).subspan(0, g.user_count_));
  g.item_negatives_ =
      AliasTable(std::span<const double>(g.strength_).subspan(g.user_count_, g.item_count_));

  g.check_invariants();
  return g;
}

bool BipartiteGraph::has_edge(VertexId user, VertexId item) const {
  auto row = neighbors(user);
  return std::binary_search(row.begin(), row.end(), item);
}

double BipartiteGraph::edge_weight(VertexId user, VertexId item) const {
  auto row = neighbors(user);
  auto it = std::lower_bound(row.begin(), row.end(), item);
  if (it == row.end() || *it != item) return 0.0;
  return neighbor_weights(user)[static_cast<std::size_t>(it - row.begin())];
}

const std::string& BipartiteGraph::key(VertexId v) const {
  return is_user(v) ? user_keys_[v] : item_keys_[v - user_count_];
}

std::optional<VertexId> BipartiteGraph::find(Side s, std::string_view key) const {
  if (s == Side::user) return user_index_.find(key);
  if (auto id = item_index_.find(key)) return static_cast<VertexId>(user_count_ + *id);
  return std::nullopt;
}

std::vector<std::string> BipartiteGraph::vertex_keys() const {
  std::vector<std::string> keys;
  keys.reserve(vertex_count());
  keys.insert(keys.end(), user_keys_.begin(), user_keys_.end());
  keys.insert(keys.end(), item_keys_.begin(), item_keys_.end());
  return keys;
}

std::vector<VertexId> BipartiteGraph::random_walk(VertexId start, std::size_t k, Rng& rng) const {
  std::vector<VertexId> walk(k);
  random_walk(start, walk, rng);
  return walk;
}

void BipartiteGraph::check_invariants() const {
  const std::size_t n = vertex_count();
  if (adj_offsets_.size() != n + 1) throw std::logic_error("adjacency offsets size mismatch");
  std::size_t user_entries = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (degree(v) == 0) throw std::logic_error("dangling vertex " + key(v));
    auto ids = neighbors(v);
    auto weights = neighbor_weights(v);
    for (std::size_t p = 0; p < ids.size(); ++p) {
      const VertexId w = ids[p];
      if (w >= n || side(w) == side(v)) throw std::logic_error("edge does not cross the partition");
      if (!(weights[p] > 0.0)) throw std::logic_error("non-positive edge weight");
      const double back = is_user(v) ? edge_weight(v, w) : edge_weight(w, v);
      if (back != weights[p]) throw std::logic_error("adjacency is not symmetric");
    }
    if (is_user(v)) user_entries += ids.size();
  }
  if (user_entries != edge_count()) throw std::logic_error("edge count mismatch");
}

GraphStats graph_stats(const BipartiteGraph& graph) {
  GraphStats s;
  s.users = graph.user_count();
  s.items = graph.item_count();
  s.edges = graph.edge_count();
  s.total_weight = graph.total_weight();
  if (s.users > 0 && s.items > 0)
    s.density = static_cast<double>(s.edges) /
                (static_cast<double>(s.users) * static_cast<double>(s.items));
  return s;
}

void write_graph_stats(std::ostream& out, const GraphStats& stats) {
  out << "users " << stats.users << '\n'
      << "items " << stats.items << '\n'
      << "vertices " << stats.users + stats.items << '\n'
      << "edges " << stats.edges << '\n'
      << "total_weight " << format_number(stats.total_weight) << '\n'
      << "density " << format_number(stats.density) << '\n';
}

}  // namespace cse
