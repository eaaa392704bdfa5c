#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cse {

// Bijective map between external string keys and dense ids [0, size()).
class KeyIndex {
 public:
  std::uint32_t intern(std::string_view key);
  std::optional<std::uint32_t> find(std::string_view key) const;

  const std::string& key(std::uint32_t id) const { return keys_[id]; }
  const std::vector<std::string>& keys() const noexcept { return keys_; }
  std::size_t size() const noexcept { return keys_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> ids_;
};

struct RawInteraction {
  std::uint32_t user;
  std::uint32_t item;
  double value;

  friend bool operator==(const RawInteraction&, const RawInteraction&) = default;
};

// Parsed (user, item, value) triples with their key dictionaries. Rows may
// repeat a pair until merge_duplicates() or canonicalize() is applied.
struct InteractionTable {
  KeyIndex users;
  KeyIndex items;
  std::vector<RawInteraction> rows;
};

struct EdgeListSchema {
  // When false the value column may be omitted and defaults to 1.
  bool require_value = false;
};

InteractionTable load_edge_list(std::istream& in, const EdgeListSchema& schema = {});
InteractionTable load_edge_list(const std::filesystem::path& path, const EdgeListSchema& schema = {});

enum class EdgeType { five_star, count, binary };

EdgeType parse_edge_type(std::string_view name);
std::string_view to_string(EdgeType type);

// Binarization threshold used when none is given: 3.5 for 5-star ratings,
// 3 for counts, unused for binary data.
double default_threshold(EdgeType type);

// Sums the values of repeated (user, item) rows. Row order follows the
// first occurrence of each pair.
InteractionTable merge_duplicates(const InteractionTable& table);

// Values >= threshold become 1, the rest are dropped. Binary data passes through.
InteractionTable binarize(const InteractionTable& table, EdgeType type, double threshold);

// Drops every row of users with fewer than `min_user_degree` distinct items.
// Applied once; items are not re-filtered. Throws DataError if nothing survives.
InteractionTable filter_min_degree(const InteractionTable& table, std::size_t min_user_degree);

// Merges duplicates, drops non-positive values and unused keys, renumbers
// keys in lexicographic order and sorts rows by (user, item). The result is
// independent of the input's line order.
InteractionTable canonicalize(const InteractionTable& table);

// Tab-separated `user item value` lines in row order.
void write_edge_list(std::ostream& out, const InteractionTable& table);

struct TableStats {
  std::size_t users = 0;
  std::size_t items = 0;
  std::size_t edges = 0;
  double density = 0.0;
};

// Counts only keys that occur in at least one row.
TableStats table_stats(const InteractionTable& table);

// Shortest decimal representation that round-trips.
std::string format_number(double value);
std::string format_number(float value);

}  // namespace cse
