#include "cse/embedding.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cse/errors.hpp"
#include "cse/interactions.hpp"

namespace cse {

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](float x) { return std::isfinite(x); });
}

ContextInit parse_context_init(std::string_view name) {
  if (name == "zero") return ContextInit::zero;
  if (name == "random") return ContextInit::random;
  throw std::invalid_argument("unknown context init: " + std::string(name));
}

std::string_view to_string(ContextInit init) {
  return init == ContextInit::zero ? "zero" : "random";
}

EmbeddingTriplet init_embeddings(std::size_t vertex_count, std::size_t dim, Rng& rng,
                                 ContextInit context) {
  if (vertex_count == 0 || dim == 0)
    throw std::invalid_argument("embeddings need at least one vertex and one dimension");
  EmbeddingTriplet t{Matrix(vertex_count, dim), Matrix(vertex_count, dim),
                     Matrix(vertex_count, dim)};
  const double half_width = 0.5 / static_cast<double>(dim);
  auto fill = [&](Matrix& m) {
    for (float& x : m.data()) x = static_cast<float>((rng.uniform() * 2.0 - 1.0) * half_width);
  };
  fill(t.phi);
  if (context == ContextInit::random) {
    fill(t.phi_uc);
    fill(t.phi_ic);
  }
  return t;
}

void write_embeddings(std::ostream& out, const Matrix& m, std::span<const std::string> keys) {
  if (keys.size() != m.rows()) throw std::invalid_argument("one key per embedding row required");
  out << m.rows() << ' ' << m.cols() << '\n';
  std::string line;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    line = keys[r];
    for (float x : m.row(r)) {
      line += ' ';
      line += format_number(x);
    }
    line += '\n';
    out << line;
  }
}

LoadedEmbeddings read_embeddings(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw DataError("embedding file is empty");
  std::istringstream hs(header);
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(hs >> rows >> cols) || cols == 0) throw ParseError(1, "expected `<vertex_count> <dim>`");

  LoadedEmbeddings loaded{{}, Matrix(rows, cols)};
  loaded.keys.reserve(rows);
  std::string line;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) throw DataError("embedding file ends after " + std::to_string(r) + " rows");
    const std::size_t line_no = r + 2;
    std::size_t pos = line.find(' ');
    if (pos == std::string::npos) throw ParseError(line_no, "missing vector");
    loaded.keys.push_back(line.substr(0, pos));
    auto row = loaded.matrix.row(r);
    const char* cur = line.data() + pos;
    const char* end = line.data() + line.size();
    for (std::size_t c = 0; c < cols; ++c) {
      while (cur < end && (*cur == ' ' || *cur == '\t')) ++cur;
      auto [ptr, ec] = std::from_chars(cur, end, row[c]);
      if (ec != std::errc()) throw ParseError(line_no, "bad value in column " + std::to_string(c + 1));
      cur = ptr;
    }
    while (cur < end && (*cur == ' ' || *cur == '\t' || *cur == '\r')) ++cur;
    if (cur != end) throw ParseError(line_no, "too many values");
  }
  return loaded;
}

}  // namespace cse
