#include "cse/alias_table.hpp"

#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "oracles.hpp"

namespace cse {
namespace {

constexpr std::size_t kDraws = 1'000'000;

TEST(AliasTableTest, EncodesNormalizedWeights) {
  const std::vector<double> weights{1.0, 3.0};
  AliasTable table(weights);
  EXPECT_NEAR(table.probability(0), 0.25, 1e-15);
  EXPECT_NEAR(table.probability(1), 0.75, 1e-15);
}

TEST(AliasTableTest, FrequenciesMatchWeights) {
  const std::vector<double> weights{1.0, 3.0};
  AliasTable table(weights);
  Rng rng(42);
  const auto freq = oracle::frequencies([&] { return table.draw(rng); }, 2, kDraws);
  EXPECT_LT(oracle::max_abs_deviation(freq, oracle::normalized(weights)), 0.01);
}

TEST(AliasTableTest, SingleOutcomeAlwaysDrawn) {
  const std::vector<double> weights{2.5};
  AliasTable table(weights);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(table.draw(rng), 0u);
}

TEST(AliasTableTest, ZeroWeightOutcomeNeverDrawn) {
  const std::vector<double> weights{0.0, 2.0, 2.0};
  AliasTable table(weights);
  EXPECT_DOUBLE_EQ(table.probability(0), 0.0);
  Rng rng(3);
  for (int i = 0; i < 100000; ++i) ASSERT_NE(table.draw(rng), 0u);
}

TEST(AliasTableTest, RejectsInvalidWeights) {
  EXPECT_THROW(AliasTable(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(AliasTable(std::vector<double>{0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(AliasTable(std::vector<double>{1.0, -1.0}), std::invalid_argument);
  EXPECT_THROW(AliasTable(std::vector<double>{1.0, std::nan("")}), std::invalid_argument);
}

// Random weight vectors: the table encodes exactly the normalized weights,
// whatever their total.
TEST(AliasTableTest, PropertyEncodedDistributionIsExact) {
  Rng gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen.below(64);
    const double scale = std::pow(10.0, static_cast<double>(gen.below(9)) - 4.0);
    std::vector<double> weights(n);
    for (double& w : weights) w = gen.below(4) == 0 ? 0.0 : gen.uniform() * scale;
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) weights[0] = scale;
    AliasTable table(weights);
    const auto expected = oracle::normalized(weights);
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(table.probability(i), expected[i], 1e-12);
    for (double p : table.probabilities()) {
      ASSERT_GE(p, 0.0);
      ASSERT_LE(p, 1.0);
    }
  }
}

TEST(AliasTableTest, PropertyFrequenciesWithinTolerance) {
  Rng gen(77);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> weights(2 + gen.below(20));
    for (double& w : weights) w = gen.uniform() * 10.0;
    AliasTable table(weights);
    Rng rng(trial);
    const auto freq = oracle::frequencies([&] { return table.draw(rng); }, weights.size(), kDraws);
    EXPECT_LT(oracle::max_abs_deviation(freq, oracle::normalized(weights)), 0.01);
  }
}

TEST(AliasTableTest, DrawIsOneLookupAndOneComparison) {
  for (std::size_t n : {std::size_t{1}, std::size_t{10}, std::size_t{100000}}) {
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) weights[i] = 1.0 + static_cast<double>(i % 7);
    AliasTable table(weights);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
      CountingDrawProbe probe;
      table.draw(rng, probe);
      EXPECT_EQ(probe.lookups, 1u);
      EXPECT_EQ(probe.compares, 1u);
    }
  }
}

TEST(AliasTableTest, SeededSequencesRepeat) {
  const std::vector<double> weights{1, 2, 3, 4, 5};
  AliasTable table(weights);
  Rng a(9), b(9);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(table.draw(a), table.draw(b));
}

TEST(AliasRowsTest, RowsAreIndependentDistributions) {
  const std::vector<std::size_t> offsets{0, 2, 2, 5};
  const std::vector<double> weights{1, 3, 2, 2, 4};
  AliasRows rows(offsets, weights);
  EXPECT_EQ(rows.rows(), 3u);
  EXPECT_EQ(rows.row_size(1), 0u);
  EXPECT_NEAR(rows.probability(0, 1), 0.75, 1e-15);
  EXPECT_NEAR(rows.probability(2, 2), 0.5, 1e-15);

  Rng rng(11);
  const auto freq = oracle::frequencies([&] { return rows.draw(2, rng); }, 3, kDraws);
  EXPECT_LT(oracle::max_abs_deviation(freq, {0.25, 0.25, 0.5}), 0.01);
}

TEST(AliasRowsTest, RejectsBadOffsets) {
  const std::vector<double> weights{1, 1};
  EXPECT_THROW(AliasRows(std::vector<std::size_t>{0, 1}, weights), std::invalid_argument);
  EXPECT_THROW(AliasRows(std::vector<std::size_t>{0, 3, 2}, weights), std::invalid_argument);
}

}  // namespace
}  // namespace cse
