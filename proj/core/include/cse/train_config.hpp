#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "cse/embedding.hpp"
#include "cse/graph.hpp"

namespace cse {

// Direct-proximity loss: pointwise log-likelihood of observed pairs, or
// pairwise preference of an observed item over a sampled one.
enum class LossVariant { rate, rank };

enum class LearningRateSchedule { constant, linear };

LossVariant parse_loss_variant(std::string_view name);
std::string_view to_string(LossVariant v);
LearningRateSchedule parse_schedule(std::string_view name);
std::string_view to_string(LearningRateSchedule s);

struct TrainConfig {
  std::size_t dim = 100;
  double learning_rate = 0.1;
  // Weight of the neighborhood loss; unset means 0.05 (rate) / 0.1 (rank).
  std::optional<double> lambda_ns;
  double lambda_reg = 0.025;
  std::size_t walk_order = 2;
  std::size_t negatives = 5;
  // Absolute step count; unset means samples_multiplier * |E|.
  std::optional<std::uint64_t> total_samples;
  double samples_multiplier = 80.0;
  LossVariant loss = LossVariant::rate;
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  NegativeDistribution negative_distribution = NegativeDistribution::degree;
  LearningRateSchedule schedule = LearningRateSchedule::linear;
  ContextInit context_init = ContextInit::zero;

  double ns_weight() const {
    if (lambda_ns) return *lambda_ns;
    return loss == LossVariant::rate ? 0.05 : 0.1;
  }

  std::uint64_t resolved_samples(std::size_t edge_count) const;

  // Learning rate after `done` of `total` steps: alpha, or a linear ramp
  // from alpha down to alpha / 10.
  double learning_rate_at(std::uint64_t done, std::uint64_t total) const {
    if (schedule == LearningRateSchedule::constant || total == 0) return learning_rate;
    const double progress = static_cast<double>(done) / static_cast<double>(total);
    return learning_rate * (1.0 - 0.9 * progress);
  }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace cse
