#pragma once

#include <cstddef>
#include <cstdint>

#include "cse/interactions.hpp"

namespace cse {

// Bipartite stochastic block model: `blocks` communities of
// users_per_block users and items_per_block items. Each user-item pair is
// an edge with probability within_p inside a community and cross_p across.
struct BlockModel {
  std::size_t blocks = 2;
  std::size_t users_per_block = 100;
  std::size_t items_per_block = 100;
  double within_p = 0.3;
  double cross_p = 0.0;
  std::uint64_t seed = 1;
};

// Users are keyed `u<index>`, items `i<index>`; user u belongs to block
// u / users_per_block. All edges have weight 1.
InteractionTable make_block_interactions(const BlockModel& model);

}  // namespace cse
