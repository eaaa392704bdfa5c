#include "cse/synthetic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cse/rng.hpp"

namespace cse {

namespace {

// Visits each index in [0, n) independently with probability p, using
// geometric gaps so sparse rows cost O(hits).
template <class Visit>
void bernoulli_indices(std::size_t n, double p, Rng& rng, Visit&& visit) {
  if (p <= 0.0 || n == 0) return;
  if (p >= 1.0) {
    for (std::size_t i = 0; i < n; ++i) visit(i);
    return;
  }
  const double log_q = std::log1p(-p);
  double pos = -1.0;
  while (true) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    pos += 1.0 + std::floor(std::log(u) / log_q);
    if (pos >= static_cast<double>(n)) return;
    visit(static_cast<std::size_t>(pos));
  }
}

}  // namespace

InteractionTable make_block_interactions(const BlockModel& m) {
  if (m.blocks == 0 || m.users_per_block == 0 || m.items_per_block == 0)
    throw std::invalid_argument("block model needs positive sizes");
  InteractionTable table;
  const std::size_t users = m.blocks * m.users_per_block;
  const std::size_t items = m.blocks * m.items_per_block;
  for (std::size_t u = 0; u < users; ++u) table.users.intern("u" + std::to_string(u));
  for (std::size_t i = 0; i < items; ++i) table.items.intern("i" + std::to_string(i));

  Rng rng(m.seed);
  for (std::size_t u = 0; u < users; ++u) {
    const std::size_t block = u / m.users_per_block;
    for (std::size_t b = 0; b < m.blocks; ++b) {
      const double p = b == block ? m.within_p : m.cross_p;
      const std::size_t base = b * m.items_per_block;
      bernoulli_indices(m.items_per_block, p, rng, [&](std::size_t i) {
        table.rows.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(base + i), 1.0});
      });
    }
  }
  return table;
}

}  // namespace cse
