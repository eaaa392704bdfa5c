#include "cse/interactions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>
#include <utility>

#include "cse/errors.hpp"

namespace cse {

std::uint32_t KeyIndex::intern(std::string_view key) {
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(keys_.size());
  keys_.emplace_back(key);
  ids_.emplace(keys_.back(), id);
  return id;
}

std::optional<std::uint32_t> KeyIndex::find(std::string_view key) const {
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  return std::nullopt;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Splits on runs of tabs/spaces. Returns the number of fields found (up to 4).
std::size_t split_fields(std::string_view line, std::string_view (&fields)[4]) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && !is_space(line[end])) ++end;
    if (count == 4) return 5;
    fields[count++] = line.substr(pos, end - pos);
    pos = end;
  }
  return count;
}

std::optional<double> parse_number(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

InteractionTable with_keys_of(const InteractionTable& table) {
  InteractionTable out;
  out.users = table.users;
  out.items = table.items;
  return out;
}

}  // namespace

InteractionTable load_edge_list(std::istream& in, const EdgeListSchema& schema) {
  InteractionTable table;
  std::string line;
  std::size_t line_no = 0;
  std::string_view fields[4];
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    std::size_t first = 0;
    while (first < view.size() && is_space(view[first])) ++first;
    if (first == view.size() || view[first] == '#') continue;

    const std::size_t n = split_fields(view, fields);
    if (n < 2) throw ParseError(line_no, "expected `user item [value]`");
    if (n > 3) throw ParseError(line_no, "too many columns");
    if (schema.require_value && n != 3) throw ParseError(line_no, "missing value column");

    double value = 1.0;
    if (n == 3) {
      auto parsed = parse_number(fields[2]);
      if (!parsed) throw ParseError(line_no, "value is not a number: " + std::string(fields[2]));
      if (!std::isfinite(*parsed) || *parsed < 0.0)
        throw ParseError(line_no, "value must be finite and non-negative");
      value = *parsed;
    }
    table.rows.push_back({table.users.intern(fields[0]), table.items.intern(fields[1]), value});
  }
  if (in.bad()) throw DataError("read error");
  if (table.rows.empty()) throw DataError("empty input: no interactions found");
  return table;
}

InteractionTable load_edge_list(const std::filesystem::path& path, const EdgeListSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return load_edge_list(in, schema);
}

EdgeType parse_edge_type(std::string_view name) {
  if (name == "five_star" || name == "5star" || name == "rating") return EdgeType::five_star;
  if (name == "count") return EdgeType::count;
  if (name == "binary") return EdgeType::binary;
  throw std::invalid_argument("unknown edge type: " + std::string(name));
}

std::string_view to_string(EdgeType type) {
  switch (type) {
    case EdgeType::five_star: return "five_star";
    case EdgeType::count: return "count";
    case EdgeType::binary: return "binary";
  }
  return "unknown";
}

double default_threshold(EdgeType type) {
  switch (type) {
    case EdgeType::five_star: return 3.5;
    case EdgeType::count: return 3.0;
    case EdgeType::binary: return 0.0;
  }
  return 0.0;
}

InteractionTable merge_duplicates(const InteractionTable& table) {
  InteractionTable out = with_keys_of(table);
  std::unordered_map<std::uint64_t, std::size_t> position;
  position.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    const std::uint64_t pair = (static_cast<std::uint64_t>(row.user) << 32) | row.item;
    auto [it, inserted] = position.try_emplace(pair, out.rows.size());
    if (inserted) {
      out.rows.push_back(row);
    } else {
      out.rows[it->second].value += row.value;
    }
  }
  return out;
}

InteractionTable binarize(const InteractionTable& table, EdgeType type, double threshold) {
  if (type == EdgeType::binary) return table;
  InteractionTable out = with_keys_of(table);
  for (const auto& row : table.rows) {
    if (row.value >= threshold) out.rows.push_back({row.user, row.item, 1.0});
  }
  return out;
}

InteractionTable filter_min_degree(const InteractionTable& table, std::size_t min_user_degree) {
  if (min_user_degree == 0) return table;

  std::vector<std::uint64_t> pairs;
  pairs.reserve(table.rows.size());
  for (const auto& row : table.rows)
    pairs.push_back((static_cast<std::uint64_t>(row.user) << 32) | row.item);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<std::size_t> degree(table.users.size(), 0);
  for (std::uint64_t p : pairs) ++degree[p >> 32];

  InteractionTable out = with_keys_of(table);
  for (const auto& row : table.rows) {
    if (degree[row.user] >= min_user_degree) out.rows.push_back(row);
  }
  if (out.rows.empty()) throw DataError("no users survive filtering");
  return out;
}

InteractionTable canonicalize(const InteractionTable& table) {
  InteractionTable merged = merge_duplicates(table);
  std::erase_if(merged.rows, [](const RawInteraction& r) { return !(r.value > 0.0); });

  auto sorted_used = [](const KeyIndex& keys, std::vector<bool>& used) {
    std::vector<std::uint32_t> order;
    for (std::uint32_t id = 0; id < keys.size(); ++id)
      if (used[id]) order.push_back(id);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return keys.key(a) < keys.key(b); });
    return order;
  };

  std::vector<bool> user_used(merged.users.size(), false);
  std::vector<bool> item_used(merged.items.size(), false);
  for (const auto& row : merged.rows) {
    user_used[row.user] = true;
    item_used[row.item] = true;
  }

  InteractionTable out;
  std::vector<std::uint32_t> user_map(merged.users.size());
  std::vector<std::uint32_t> item_map(merged.items.size());
  for (std::uint32_t old : sorted_used(merged.users, user_used))
    user_map[old] = out.users.intern(merged.users.key(old));
  for (std::uint32_t old : sorted_used(merged.items, item_used))
    item_map[old] = out.items.intern(merged.items.key(old));

  out.rows.reserve(merged.rows.size());
  for (const auto& row : merged.rows)
    out.rows.push_back({user_map[row.user], item_map[row.item], row.value});
  std::sort(out.rows.begin(), out.rows.end(), [](const RawInteraction& a, const RawInteraction& b) {
    return a.user != b.user ? a.user < b.user : a.item < b.item;
  });
  return out;
}

void write_edge_list(std::ostream& out, const InteractionTable& table) {
  for (const auto& row : table.rows) {
    out << table.users.key(row.user) << '\t' << table.items.key(row.item) << '\t'
        << format_number(row.value) << '\n';
  }
}

TableStats table_stats(const InteractionTable& table) {
  std::vector<bool> user_used(table.users.size(), false);
  std::vector<bool> item_used(table.items.size(), false);
  for (const auto& row : table.rows) {
    user_used[row.user] = true;
    item_used[row.item] = true;
  }
  TableStats stats;
  stats.users = static_cast<std::size_t>(std::count(user_used.begin(), user_used.end(), true));
  stats.items = static_cast<std::size_t>(std::count(item_used.begin(), item_used.end(), true));
  stats.edges = merge_duplicates(table).rows.size();
  if (stats.users > 0 && stats.items > 0)
    stats.density = static_cast<double>(stats.edges) /
                    (static_cast<double>(stats.users) * static_cast<double>(stats.items));
  return stats;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string format_number(float value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace cse
