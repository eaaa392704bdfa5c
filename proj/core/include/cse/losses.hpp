#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>

#include "cse/embedding.hpp"

namespace cse {

// Loss value and its derivative with respect to the score.
struct LogisticTerm {
  double loss;
  double slope;
};

// -log sigmoid(s) for a positive pair, -log sigmoid(-s) for a negative one.
inline LogisticTerm logistic_term(double s, bool positive) {
  const double p = sigmoid(positive ? s : -s);
  return {-std::log(p), positive ? -(1.0 - p) : (1.0 - p)};
}

/// Loss -log sigmoid(+-a.b) and its gradients with respect to both rows.
template <std::floating_point T>
double pair_loss_gradient(std::span<const T> a, std::span<const T> b, bool positive,
                          std::span<T> grad_a, std::span<T> grad_b) {
  const LogisticTerm term = logistic_term(static_cast<double>(score<T>(a, b)), positive);
  const T slope = static_cast<T>(term.slope);
  for (std::size_t t = 0; t < a.size(); ++t) {
    grad_a[t] = slope * b[t];
    grad_b[t] = slope * a[t];
  }
  return term.loss;
}

/// Loss -log sigmoid(u.p - u.n) for "user prefers p over n" and its
/// gradients with respect to the three rows.
template <std::floating_point T>
double triple_loss_gradient(std::span<const T> user, std::span<const T> pos, std::span<const T> neg,
                            std::span<T> grad_user, std::span<T> grad_pos, std::span<T> grad_neg) {
  const double s = static_cast<double>(score<T>(user, pos)) - static_cast<double>(score<T>(user, neg));
  const LogisticTerm term = logistic_term(s, true);
  const T slope = static_cast<T>(term.slope);
  for (std::size_t t = 0; t < user.size(); ++t) {
    grad_user[t] = slope * (pos[t] - neg[t]);
    grad_pos[t] = slope * user[t];
    grad_neg[t] = -slope * user[t];
  }
  return term.loss;
}

}  // namespace cse
