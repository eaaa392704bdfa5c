#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cse/rng.hpp"

namespace cse {

/// Fills `prob` and `alias` (both sized like `weights`) with a Vose alias
/// table for the distribution proportional to `weights`.
///
/// Weights must be finite and non-negative with a positive sum; the total
/// does not need to be normalized. Throws std::invalid_argument otherwise.
void build_alias_rows(std::span<const double> weights, std::span<double> prob,
                      std::span<std::uint32_t> alias);

// Draw instrumentation hooks. The default probe compiles away.
struct NullDrawProbe {
  void lookup() {}
  void compare() {}
};

struct CountingDrawProbe {
  std::size_t lookups = 0;
  std::size_t compares = 0;
  void lookup() { ++lookups; }
  void compare() { ++compares; }
};

/// One alias draw: a uniform slot pick and a uniform coin against that slot.
template <class Probe = NullDrawProbe>
inline std::uint32_t alias_draw(std::span<const double> prob, std::span<const std::uint32_t> alias,
                                Rng& rng, Probe&& probe = {}) {
  const auto slot = static_cast<std::uint32_t>(rng.below(prob.size()));
  const double coin = rng.uniform();
  probe.lookup();
  const double threshold = prob[slot];
  probe.compare();
  return coin < threshold ? slot : alias[slot];
}

/// O(1) sampler over a fixed discrete distribution.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const noexcept { return prob_.size(); }
  bool empty() const noexcept { return prob_.empty(); }

  template <class Probe = NullDrawProbe>
  std::uint32_t draw(Rng& rng, Probe&& probe = {}) const {
    return alias_draw(std::span<const double>(prob_), std::span<const std::uint32_t>(alias_), rng,
                      probe);
  }

  // Exact probability of `outcome` as encoded by the table.
  double probability(std::size_t outcome) const;

  std::span<const double> probabilities() const noexcept { return prob_; }
  std::span<const std::uint32_t> aliases() const noexcept { return alias_; }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

/// Compressed sparse alias rows: one alias table per row, all packed into
/// flat arrays addressed by CSR offsets. Space is linear in the total
/// number of entries.
class AliasRows {
 public:
  AliasRows() = default;

  // `offsets` has rows+1 entries; row r covers weights[offsets[r], offsets[r+1]).
  AliasRows(std::span<const std::size_t> offsets, std::span<const double> weights);

  std::size_t rows() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t row_size(std::size_t row) const { return offsets_[row + 1] - offsets_[row]; }

  // Position within `row` (0-based). The row must be non-empty.
  template <class Probe = NullDrawProbe>
  std::uint32_t draw(std::size_t row, Rng& rng, Probe&& probe = {}) const {
    const std::size_t begin = offsets_[row];
    const std::size_t n = offsets_[row + 1] - begin;
    return alias_draw(std::span<const double>(prob_).subspan(begin, n),
                      std::span<const std::uint32_t>(alias_).subspan(begin, n), rng, probe);
  }

  double probability(std::size_t row, std::size_t position) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace cse
