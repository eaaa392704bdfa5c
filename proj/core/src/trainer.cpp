#include "cse/trainer.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cse/errors.hpp"
#include "cse/steps.hpp"

namespace cse {

LossVariant parse_loss_variant(std::string_view name) {
  if (name == "rate") return LossVariant::rate;
  if (name == "rank") return LossVariant::rank;
  throw std::invalid_argument("unknown loss variant: " + std::string(name));
}

std::string_view to_string(LossVariant v) { return v == LossVariant::rate ? "rate" : "rank"; }

LearningRateSchedule parse_schedule(std::string_view name) {
  if (name == "constant") return LearningRateSchedule::constant;
  if (name == "linear") return LearningRateSchedule::linear;
  throw std::invalid_argument("unknown learning-rate schedule: " + std::string(name));
}

std::string_view to_string(LearningRateSchedule s) {
  return s == LearningRateSchedule::constant ? "constant" : "linear";
}

std::uint64_t TrainConfig::resolved_samples(std::size_t edge_count) const {
  if (total_samples) return *total_samples;
  return static_cast<std::uint64_t>(std::llround(samples_multiplier * static_cast<double>(edge_count)));
}

void TrainConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (dim == 0) fail("dim must be positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning rate must be positive");
  if (!(ns_weight() >= 0.0) || !std::isfinite(ns_weight())) fail("lambda must be non-negative");
  if (!(lambda_reg >= 0.0) || !std::isfinite(lambda_reg)) fail("regularization must be non-negative");
  if (walk_order == 0) fail("walk order must be at least 1");
  if (!(samples_multiplier >= 0.0) || !std::isfinite(samples_multiplier))
    fail("samples multiplier must be non-negative");
  if (workers == 0) fail("workers must be at least 1");
}

EmbeddingTriplet train(const BipartiteGraph& graph, const TrainConfig& config,
                       const TrainOptions& options) {
  config.validate();
  Rng init_rng(Rng::derive(config.seed, ~std::uint64_t{0}));
  EmbeddingTriplet model = init_embeddings(graph.vertex_count(), config.dim, init_rng, config.context_init);
  run_parallel(graph, config, model, options);
  return model;
}

namespace {

struct SharedState {
  std::atomic<std::uint64_t> done{0};
  std::atomic<bool> stop{false};
  std::mutex error_mutex;
  std::exception_ptr error;

  void fail(std::exception_ptr e) {
    std::lock_guard lock(error_mutex);
    if (!error) error = std::move(e);
    stop.store(true, std::memory_order_relaxed);
  }
};

constexpr std::uint64_t kSyncInterval = 4096;

}  // namespace

StepReport run_parallel(const BipartiteGraph& graph, const TrainConfig& config,
                        EmbeddingTriplet& model, const TrainOptions& options) {
  config.validate();
  if (model.vertex_count() != graph.vertex_count() || model.dim() != config.dim)
    throw std::invalid_argument("model shape does not match graph and config");

  const std::uint64_t total = config.resolved_samples(graph.edge_count());
  const std::size_t workers = config.workers;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  SharedState shared;
  std::vector<double> ema(workers, 0.0);

  auto work = [&](std::size_t w) {
    try {
      const std::uint64_t share = total / workers + (w < total % workers ? 1 : 0);
      StepWorkspace ws(config, Rng::derive(config.seed, w));
      double avg = 0.0;
      std::uint64_t pending = 0;
      for (std::uint64_t n = 0; n < share; ++n) {
        const StepContext ctx{graph, model, config, config.learning_rate_at(n, share)};
        const Edge e = graph.sample_edge(ws.rng);
        const double loss = train_step(e, ctx, ws);
        if (!std::isfinite(loss)) {
          throw NumericError("non-finite loss at step " + std::to_string(n) + " of worker " +
                             std::to_string(w) + " on edge (" + graph.key(e.user) + ", " +
                             graph.key(e.item) + ")");
        }
        avg = n == 0 ? loss : kLossEmaDecay * avg + (1.0 - kLossEmaDecay) * loss;

        if (++pending == kSyncInterval) {
          shared.done.fetch_add(pending, std::memory_order_relaxed);
          pending = 0;
          if (shared.stop.load(std::memory_order_relaxed)) break;
        }
        if (w == 0 && options.progress && (n + 1) % options.report_every == 0) {
          const std::uint64_t done =
              workers == 1 ? n + 1 : shared.done.load(std::memory_order_relaxed) + pending;
          options.progress({done, total, avg, elapsed()});
        }
      }
      shared.done.fetch_add(pending, std::memory_order_relaxed);
      ema[w] = avg;
    } catch (...) {
      shared.fail(std::current_exception());
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  if (shared.error) std::rethrow_exception(shared.error);

  double mean_ema = 0.0;
  for (double e : ema) mean_ema += e;
  StepReport report{shared.done.load(), total, mean_ema / static_cast<double>(workers), elapsed()};
  if (options.progress) options.progress(report);
  return report;
}

}  // namespace cse
