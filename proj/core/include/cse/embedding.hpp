#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cse/rng.hpp"

namespace cse {

// Row-major dense matrix of 32-bit reals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0f) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<float> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const float> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }

  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> data_;
};

/// The three trained matrices. Row v of `phi` is the representation used
/// for recommendation; `phi_uc` / `phi_ic` are the user- and item-context
/// matrices used only by the neighborhood loss.
struct EmbeddingTriplet {
  Matrix phi;
  Matrix phi_uc;
  Matrix phi_ic;

  std::size_t dim() const noexcept { return phi.cols(); }
  std::size_t vertex_count() const noexcept { return phi.rows(); }
  bool all_finite() const { return phi.all_finite() && phi_uc.all_finite() && phi_ic.all_finite(); }

  friend bool operator==(const EmbeddingTriplet&, const EmbeddingTriplet&) = default;
};

enum class ContextInit { zero, random };

ContextInit parse_context_init(std::string_view name);
std::string_view to_string(ContextInit init);

// phi ~ U(-0.5/d, 0.5/d) i.i.d.; context matrices zero (or the same
// uniform law with ContextInit::random).
EmbeddingTriplet init_embeddings(std::size_t vertex_count, std::size_t dim, Rng& rng,
                                 ContextInit context = ContextInit::zero);

template <std::floating_point T>
T score(std::span<const T> a, std::span<const T> b) {
  T sum = 0;
  for (std::size_t t = 0; t < a.size(); ++t) sum += a[t] * b[t];
  return sum;
}

inline float score(std::span<const float> a, std::span<const float> b) { return score<float>(a, b); }

inline constexpr double kSigmoidBound = 6.0;

// Logistic function with the argument clamped to [-6, 6].
inline double sigmoid(double x) {
  const double clamped = std::clamp(x, -kSigmoidBound, kSigmoidBound);
  return 1.0 / (1.0 + std::exp(-clamped));
}

/// Writes `<rows> <dim>` followed by one `<key> <f_1> ... <f_d>` line per
/// row. Values use the shortest round-trip decimal form, so output bytes
/// are a pure function of the matrix.
void write_embeddings(std::ostream& out, const Matrix& m, std::span<const std::string> keys);

struct LoadedEmbeddings {
  std::vector<std::string> keys;
  Matrix matrix;
};

// Throws DataError on a malformed header, row, or row count.
LoadedEmbeddings read_embeddings(std::istream& in);

}  // namespace cse
