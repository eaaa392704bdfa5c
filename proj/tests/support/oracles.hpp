#pragma once

// Reference computations for tests. Deliberately naive and independent of
// the library's implementation paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace cse::oracle {

// Empirical frequency of each outcome in [0, outcomes) over `draws` calls.
template <class Draw>
std::vector<double> frequencies(Draw&& draw, std::size_t outcomes, std::size_t draws) {
  std::vector<double> counts(outcomes, 0.0);
  for (std::size_t i = 0; i < draws; ++i) counts.at(static_cast<std::size_t>(draw())) += 1.0;
  for (double& c : counts) c /= static_cast<double>(draws);
  return counts;
}

inline std::vector<double> normalized(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<double> p;
  for (double w : weights) p.push_back(w / total);
  return p;
}

inline double max_abs_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

using WeightedAdjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

// marginals[j][v] = P(W^{j+1} = v) for a weighted walk from `start`, by
// listing every path of length k with its probability.
inline std::vector<std::vector<double>> walk_marginals_by_paths(const WeightedAdjacency& adj,
                                                                std::size_t start, std::size_t k) {
  std::vector<std::vector<double>> marginals(k, std::vector<double>(adj.size(), 0.0));
  std::vector<std::size_t> path;
  std::function<void(std::size_t, double)> extend = [&](std::size_t v, double p) {
    if (path.size() == k) {
      for (std::size_t j = 0; j < k; ++j) marginals[j][path[j]] += p;
      return;
    }
    double total = 0.0;
    for (auto [w, weight] : adj[v]) total += weight;
    for (auto [w, weight] : adj[v]) {
      path.push_back(w);
      extend(w, p * weight / total);
      path.pop_back();
    }
  };
  extend(start, 1.0);
  return marginals;
}

// Recall@N and AP@N straight from the definitions, O(N * |T|).
template <class Id>
double recall(const std::vector<Id>& ranked, const std::vector<Id>& truth, std::size_t n) {
  std::size_t hits = 0;
  for (std::size_t k = 0; k < n && k < ranked.size(); ++k)
    for (const Id& t : truth)
      if (ranked[k] == t) {
        ++hits;
        break;
      }
  return static_cast<double>(hits) / static_cast<double>(std::min(n, truth.size()));
}

template <class Id>
double average_precision(const std::vector<Id>& ranked, const std::vector<Id>& truth,
                         std::size_t n) {
  auto relevant = [&](std::size_t k) {
    for (const Id& t : truth)
      if (ranked[k] == t) return true;
    return false;
  };
  double sum = 0.0;
  for (std::size_t k = 0; k < n && k < ranked.size(); ++k) {
    if (!relevant(k)) continue;
    std::size_t hits_to_k = 0;
    for (std::size_t j = 0; j <= k; ++j) hits_to_k += relevant(j) ? 1 : 0;
    sum += static_cast<double>(hits_to_k) / static_cast<double>(k + 1);
  }
  return sum / static_cast<double>(std::min(n, truth.size()));
}

inline double log_sigmoid(double x) { return -std::log1p(std::exp(-x)); }

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
  return s;
}

// Central differences of f at x with step h.
inline std::vector<double> numeric_gradient(const std::function<double(const std::vector<double>&)>& f,
                                            std::vector<double> x, double h = 1e-4) {
  std::vector<double> g(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double keep = x[t];
    x[t] = keep + h;
    const double up = f(x);
    x[t] = keep - h;
    const double down = f(x);
    x[t] = keep;
    g[t] = (up - down) / (2.0 * h);
  }
  return g;
}

// ||a - b|| / max(||a||, ||b||), 0 when both vanish.
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    diff += (a[t] - b[t]) * (a[t] - b[t]);
    na += a[t] * a[t];
    nb += b[t] * b[t];
  }
  const double scale = std::sqrt(std::max(na, nb));
  return scale == 0.0 ? std::sqrt(diff) : std::sqrt(diff) / scale;
}

}  // namespace cse::oracle
