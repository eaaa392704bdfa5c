#include "cse/steps.hpp"

#include <algorithm>
#include <stdexcept>

#include "cse/losses.hpp"

namespace cse {

namespace {

// SGD on a loss whose score derivative is `slope`, for score = a.b, with L2
// decay `decay_*` on each row. Both rows read their old values.
inline void update_pair(std::span<float> a, std::span<float> b, float slope, float lr,
                        float decay_a, float decay_b) {
  const std::size_t d = a.size();
  for (std::size_t t = 0; t < d; ++t) {
    const float at = a[t];
    const float bt = b[t];
    a[t] = at - lr * (slope * bt + decay_a * at);
    b[t] = bt - lr * (slope * at + decay_b * bt);
  }
}

inline void prefetch_row(std::span<const float> row) {
  const char* p = reinterpret_cast<const char*>(row.data());
  const std::size_t bytes = row.size() * sizeof(float);
  for (std::size_t off = 0; off < bytes; off += 64) __builtin_prefetch(p + off, 1, 3);
}

inline void decay_row(std::span<float> row, float lr, float decay) {
  const float keep = 1.0f - lr * decay;
  for (float& x : row) x *= keep;
}

}  // namespace

double step_ds_rate(VertexId user, VertexId item, const StepContext& ctx, StepWorkspace& ws) {
  Matrix& phi = ctx.model.phi;
  const auto lr = static_cast<float>(ctx.learning_rate);
  const auto reg = static_cast<float>(ctx.config.lambda_reg);

  // Draw all negative pairs first so their rows can be fetched while the
  // positive pair is updated.
  ws.negatives.clear();
  for (std::size_t m = 0; m < ctx.config.negatives; ++m) {
    const VertexId nu = ctx.graph.sample_negative(Side::user, ws.rng, ctx.config.negative_distribution);
    const VertexId ni = ctx.graph.sample_negative(Side::item, ws.rng, ctx.config.negative_distribution);
    ws.negatives.push_back(nu);
    ws.negatives.push_back(ni);
    prefetch_row(phi.row(nu));
    prefetch_row(phi.row(ni));
  }

  auto u = phi.row(user);
  auto i = phi.row(item);
  const LogisticTerm pos = logistic_term(score(u, i), true);
  update_pair(u, i, static_cast<float>(pos.slope), lr, reg, reg);
  double loss = pos.loss;

  for (std::size_t m = 0; m < ctx.config.negatives; ++m) {
    auto a = phi.row(ws.negatives[2 * m]);
    auto b = phi.row(ws.negatives[2 * m + 1]);
    const LogisticTerm neg = logistic_term(score(a, b), false);
    update_pair(a, b, static_cast<float>(neg.slope), lr, reg, reg);
    loss += neg.loss;
  }
  return loss;
}

double step_ds_rank(VertexId user, VertexId pos_item, const StepContext& ctx, StepWorkspace& ws) {
  Matrix& phi = ctx.model.phi;
  const auto lr = static_cast<float>(ctx.learning_rate);
  const auto reg = static_cast<float>(ctx.config.lambda_reg);

  const VertexId neg_item =
      ctx.graph.sample_negative(Side::item, ws.rng, ctx.config.negative_distribution);
  auto u = phi.row(user);
  auto j = phi.row(pos_item);

  if (neg_item == pos_item) {
    // Preference of an item over itself: zero gradient, decay only.
    decay_row(u, lr, reg);
    decay_row(j, lr, reg);
    return logistic_term(0.0, true).loss;
  }

  auto k = phi.row(neg_item);
  const double s = static_cast<double>(score(u, j)) - static_cast<double>(score(u, k));
  const LogisticTerm term = logistic_term(s, true);
  const auto slope = static_cast<float>(term.slope);
  const std::size_t d = u.size();
  for (std::size_t t = 0; t < d; ++t) {
    const float ut = u[t];
    const float jt = j[t];
    const float kt = k[t];
    u[t] = ut - lr * (slope * (jt - kt) + reg * ut);
    j[t] = jt - lr * (slope * ut + reg * jt);
    k[t] = kt - lr * (-slope * ut + reg * kt);
  }
  return term.loss;
}

NsOutcome step_ns(VertexId center, const StepContext& ctx, StepWorkspace& ws) {
  NsOutcome out;
  const std::size_t k = ctx.config.walk_order;
  // Same-side vertices sit at even offsets W^2, W^4, ...
  if (k < 2) return out;

  const Side side = ctx.graph.side(center);
  Matrix& context = side == Side::user ? ctx.model.phi_uc : ctx.model.phi_ic;
  auto v = ctx.model.phi.row(center);
  const auto lr = static_cast<float>(ctx.learning_rate);
  const double weight = ctx.config.ns_weight();

  std::span<VertexId> walk(ws.walk.data(), k);
  ctx.graph.random_walk(center, walk, ws.rng);

  // Positive context followed by its negatives, for every even offset.
  ws.negatives.clear();
  for (std::size_t step = 2; step <= k; step += 2) {
    const VertexId c = walk[step - 1];
    if (ctx.graph.side(c) != side) throw std::logic_error("walk context crossed the partition");
    ws.negatives.push_back(c);
    prefetch_row(context.row(c));
    for (std::size_t m = 0; m < ctx.config.negatives; ++m) {
      const VertexId n = ctx.graph.sample_negative(side, ws.rng, ctx.config.negative_distribution);
      ws.negatives.push_back(n);
      prefetch_row(context.row(n));
    }
  }
  std::fill(ws.accum.begin(), ws.accum.end(), 0.0f);
  const std::size_t d = v.size();

  auto train_context = [&](VertexId c, bool positive) {
    auto row = context.row(c);
    const LogisticTerm term = logistic_term(score(v, std::span<const float>(row)), positive);
    const auto slope = static_cast<float>(weight * term.slope);
    for (std::size_t t = 0; t < d; ++t) {
      const float ct = row[t];
      ws.accum[t] += slope * ct;
      row[t] = ct - lr * slope * v[t];
    }
    out.loss += term.loss;
  };

  const std::size_t group = 1 + ctx.config.negatives;
  for (std::size_t p = 0; p < ws.negatives.size(); ++p) {
    const bool positive = p % group == 0;
    train_context(ws.negatives[p], positive);
    if (positive) ++out.context_pairs;
  }

  const auto reg = static_cast<float>(ctx.config.lambda_reg);
  for (std::size_t t = 0; t < d; ++t) v[t] -= lr * (ws.accum[t] + reg * v[t]);
  return out;
}

double train_step(Edge edge, const StepContext& ctx, StepWorkspace& ws) {
  double loss = ctx.config.loss == LossVariant::rate ? step_ds_rate(edge.user, edge.item, ctx, ws)
                                                     : step_ds_rank(edge.user, edge.item, ctx, ws);
  const double weight = ctx.config.ns_weight();
  if (weight != 0.0) {
    const double ns = step_ns(edge.user, ctx, ws).loss + step_ns(edge.item, ctx, ws).loss;
    loss += weight * ns;
  }
  return loss;
}

}  // namespace cse
