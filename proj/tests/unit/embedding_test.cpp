#include "cse/embedding.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cse/errors.hpp"

namespace cse {
namespace {

TEST(InitEmbeddingsTest, PhiWithinInitRange) {
  Rng rng(1);
  const auto m = init_embeddings(500, 100, rng);
  EXPECT_EQ(m.vertex_count(), 500u);
  EXPECT_EQ(m.dim(), 100u);
  bool any_nonzero = false;
  for (float x : m.phi.data()) {
    EXPECT_LT(std::abs(x), 0.005f);
    any_nonzero |= x != 0.0f;
  }
  EXPECT_TRUE(any_nonzero);
}

TEST(InitEmbeddingsTest, ContextsStartAtZero) {
  Rng rng(1);
  const auto m = init_embeddings(10, 8, rng);
  for (float x : m.phi_uc.data()) EXPECT_EQ(x, 0.0f);
  for (float x : m.phi_ic.data()) EXPECT_EQ(x, 0.0f);
}

TEST(InitEmbeddingsTest, RandomContextsOption) {
  Rng rng(1);
  const auto m = init_embeddings(10, 8, rng, ContextInit::random);
  bool any_nonzero = false;
  for (float x : m.phi_uc.data()) {
    EXPECT_LT(std::abs(x), 0.5f / 8);
    any_nonzero |= x != 0.0f;
  }
  EXPECT_TRUE(any_nonzero);
}

TEST(InitEmbeddingsTest, SeedDetermines) {
  Rng a(3), b(3), c(4);
  EXPECT_EQ(init_embeddings(20, 16, a), init_embeddings(20, 16, b));
  Rng a2(3);
  EXPECT_NE(init_embeddings(20, 16, a2), init_embeddings(20, 16, c));
}

TEST(InitEmbeddingsTest, RejectsEmptyShape) {
  Rng rng(1);
  EXPECT_THROW(init_embeddings(0, 4, rng), std::invalid_argument);
  EXPECT_THROW(init_embeddings(4, 0, rng), std::invalid_argument);
}

TEST(ScoreTest, DotProduct) {
  const std::vector<float> a{1, 2};
  const std::vector<float> b{3, -1};
  EXPECT_EQ(score(a, b), 1.0f);
  EXPECT_EQ(score(b, a), score(a, b));
}

TEST(SigmoidTest, ReferenceValues) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(6.0), 0.9975273768433653, 1e-15);
  EXPECT_EQ(sigmoid(50.0), sigmoid(6.0));
  EXPECT_EQ(sigmoid(-50.0), sigmoid(-6.0));
  for (double x = -10; x <= 10; x += 0.37) EXPECT_NEAR(sigmoid(x) + sigmoid(-x), 1.0, 1e-12);
}

TEST(EmbeddingIoTest, RoundTripIsExact) {
  Rng rng(5);
  const auto m = init_embeddings(3, 4, rng);
  const std::vector<std::string> keys{"u1", "x", "u1"};
  std::stringstream s;
  write_embeddings(s, m.phi, keys);
  EXPECT_EQ(s.str().substr(0, 4), "3 4\n");
  const auto back = read_embeddings(s);
  EXPECT_EQ(back.keys, keys);
  EXPECT_EQ(back.matrix, m.phi);
}

TEST(EmbeddingIoTest, RejectsMalformedFiles) {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_embeddings(in);
  };
  EXPECT_THROW(read(""), DataError);
  EXPECT_THROW(read("x y\n"), ParseError);
  EXPECT_THROW(read("2 2\na 1 2\n"), DataError);
  EXPECT_THROW(read("1 2\na 1\n"), ParseError);
  EXPECT_THROW(read("1 2\na 1 2 3\n"), ParseError);
  EXPECT_THROW(read("1 2\na 1 q\n"), ParseError);
}

}  // namespace
}  // namespace cse
