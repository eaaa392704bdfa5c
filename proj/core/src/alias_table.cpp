#include "cse/alias_table.hpp"

#include <cmath>
#include <stdexcept>

namespace cse {

void build_alias_rows(std::span<const double> weights, std::span<double> prob,
                      std::span<std::uint32_t> alias) {
  const std::size_t n = weights.size();
  if (n == 0) throw std::invalid_argument("alias table needs at least one outcome");
  if (prob.size() != n || alias.size() != n)
    throw std::invalid_argument("alias rows must match the weight count");

  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw std::invalid_argument("alias weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("alias weights must have a positive sum");

  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  small.reserve(n);
  large.reserve(n);
  const double scale = static_cast<double>(n) / total;
  for (std::size_t i = 0; i < n; ++i) {
    prob[i] = weights[i] * scale;
    alias[i] = static_cast<std::uint32_t>(i);
    (prob[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }

  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    alias[s] = l;
    prob[l] = (prob[l] + prob[s]) - 1.0;
    if (prob[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::uint32_t i : large) prob[i] = 1.0;
  for (std::uint32_t i : small) prob[i] = 1.0;
}

namespace {

double encoded_probability(std::span<const double> prob, std::span<const std::uint32_t> alias,
                           std::size_t outcome) {
  const std::size_t n = prob.size();
  double mass = prob[outcome];
  for (std::size_t slot = 0; slot < n; ++slot) {
    if (alias[slot] == outcome && slot != outcome) mass += 1.0 - prob[slot];
  }
  return mass / static_cast<double>(n);
}

}  // namespace

AliasTable::AliasTable(std::span<const double> weights)
    : prob_(weights.size()), alias_(weights.size()) {
  build_alias_rows(weights, prob_, alias_);
}

double AliasTable::probability(std::size_t outcome) const {
  return encoded_probability(prob_, alias_, outcome);
}

AliasRows::AliasRows(std::span<const std::size_t> offsets, std::span<const double> weights)
    : offsets_(offsets.begin(), offsets.end()), prob_(weights.size()), alias_(weights.size()) {
  if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != weights.size())
    throw std::invalid_argument("alias row offsets do not cover the weights");
  for (std::size_t r = 0; r + 1 < offsets_.size(); ++r) {
    const std::size_t begin = offsets_[r];
    const std::size_t end = offsets_[r + 1];
    if (end < begin) throw std::invalid_argument("alias row offsets must be non-decreasing");
    if (end == begin) continue;
    build_alias_rows(weights.subspan(begin, end - begin),
                     std::span<double>(prob_).subspan(begin, end - begin),
                     std::span<std::uint32_t>(alias_).subspan(begin, end - begin));
  }
}

double AliasRows::probability(std::size_t row, std::size_t position) const {
  const std::size_t begin = offsets_[row];
  const std::size_t n = offsets_[row + 1] - begin;
  return encoded_probability(std::span<const double>(prob_).subspan(begin, n),
                             std::span<const std::uint32_t>(alias_).subspan(begin, n), position);
}

}  // namespace cse
