#pragma once

#include <cstddef>
#include <vector>

#include "cse/embedding.hpp"
#include "cse/graph.hpp"
#include "cse/rng.hpp"
#include "cse/train_config.hpp"

namespace cse {

// Worker-private state for the single-step updates.
struct StepWorkspace {
  explicit StepWorkspace(const TrainConfig& config, std::uint64_t seed)
      : rng(seed), walk(config.walk_order), accum(config.dim) {
    negatives.reserve(2 * config.negatives + (config.walk_order / 2) * (1 + config.negatives));
  }

  Rng rng;
  std::vector<VertexId> walk;
  // Vertices drawn for the current update, in processing order.
  std::vector<VertexId> negatives;
  std::vector<float> accum;
};

// Everything a step reads or writes besides the workspace.
struct StepContext {
  const BipartiteGraph& graph;
  EmbeddingTriplet& model;
  const TrainConfig& config;
  double learning_rate;
};

/// Pointwise direct-proximity update for the observed pair (user, item)
/// plus `negatives` independent (user, item) pairs drawn from the whole
/// collection. Returns the summed loss.
double step_ds_rate(VertexId user, VertexId item, const StepContext& ctx, StepWorkspace& ws);

/// Pairwise update: one negative item per positive. Returns the loss.
double step_ds_rank(VertexId user, VertexId pos_item, const StepContext& ctx, StepWorkspace& ws);

struct NsOutcome {
  double loss = 0.0;           // unweighted neighborhood loss
  std::size_t context_pairs = 0;
};

/// Walks walk_order steps from `center` and trains every same-side vertex
/// on the walk as a context of `center`, with `negatives` contrast contexts
/// from the center's side. Gradients are scaled by the neighborhood weight.
NsOutcome step_ns(VertexId center, const StepContext& ctx, StepWorkspace& ws);

/// One optimization step for an observed edge: the direct update and one
/// neighborhood walk from each endpoint. Returns DS loss + lambda * NS loss.
double train_step(Edge edge, const StepContext& ctx, StepWorkspace& ws);

}  // namespace cse
