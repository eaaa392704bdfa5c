#pragma once

#include <cstdint>
#include <functional>

#include "cse/embedding.hpp"
#include "cse/graph.hpp"
#include "cse/train_config.hpp"

namespace cse {

struct StepReport {
  std::uint64_t samples_done = 0;
  std::uint64_t total_samples = 0;
  // Exponential moving average (decay 0.999) of per-step losses.
  double loss_ema = 0.0;
  double seconds = 0.0;

  double samples_per_second() const {
    return seconds > 0.0 ? static_cast<double>(samples_done) / seconds : 0.0;
  }
};

using ProgressSink = std::function<void(const StepReport&)>;

struct TrainOptions {
  // Called from worker 0 every `report_every` of its steps, and once at the end.
  ProgressSink progress;
  std::uint64_t report_every = 1'000'000;
};

inline constexpr double kLossEmaDecay = 0.999;

/// Initializes the triplet from config.seed and runs run_parallel().
EmbeddingTriplet train(const BipartiteGraph& graph, const TrainConfig& config,
                       const TrainOptions& options = {});

/// Runs the resolved number of steps on `model` in place, split evenly
/// across config.workers threads that update shared rows without locks.
/// A single worker runs on the calling thread and is bit-reproducible.
///
/// Throws NumericError when a step produces a non-finite loss; an exception
/// in any worker stops all workers and is rethrown here.
StepReport run_parallel(const BipartiteGraph& graph, const TrainConfig& config,
                        EmbeddingTriplet& model, const TrainOptions& options = {});

}  // namespace cse
