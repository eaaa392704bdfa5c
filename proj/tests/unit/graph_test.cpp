#include "cse/graph.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "cse/errors.hpp"
#include "oracles.hpp"

namespace cse {
namespace {

constexpr std::size_t kDraws = 1'000'000;

BipartiteGraph graph_of(const std::string& text) {
  std::istringstream in(text);
  return build_graph(load_edge_list(in));
}

oracle::WeightedAdjacency adjacency_of(const BipartiteGraph& g) {
  oracle::WeightedAdjacency adj(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto ids = g.neighbors(v);
    auto ws = g.neighbor_weights(v);
    for (std::size_t p = 0; p < ids.size(); ++p) adj[v].emplace_back(ids[p], ws[p]);
  }
  return adj;
}

TEST(BuildGraphTest, CompleteUniformGraph) {
  const auto g = graph_of("u1 i1\nu1 i2\nu2 i1\nu2 i2\nu3 i1\nu3 i2\n");
  EXPECT_EQ(g.user_count(), 3u);
  EXPECT_EQ(g.item_count(), 2u);
  EXPECT_EQ(g.edge_count(), 6u);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t p = 0; p < g.degree(v); ++p)
      EXPECT_NEAR(g.neighbor_probability(v, p), 1.0 / static_cast<double>(g.degree(v)), 1e-15);
  }
}

TEST(BuildGraphTest, NeighborSamplerFollowsWeights) {
  const auto g = graph_of("u1 i1 1\nu1 i2 3\n");
  const VertexId u1 = *g.find(Side::user, "u1");
  const VertexId i2 = *g.find(Side::item, "i2");
  const auto row = g.neighbors(u1);
  const std::size_t pos = static_cast<std::size_t>(std::find(row.begin(), row.end(), i2) - row.begin());
  EXPECT_NEAR(g.neighbor_probability(u1, pos), 0.75, 1e-15);

  Rng rng(1);
  std::size_t hits = 0;
  for (std::size_t n = 0; n < kDraws; ++n) hits += g.sample_neighbor(u1, rng) == i2 ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(hits) / kDraws, 0.75, 0.01);
}

TEST(BuildGraphTest, DuplicatesMergeBySumming) {
  const auto g = graph_of("u1\ti1\t2\nu1\ti1\t2\n");
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edge_weight(0, 1), 4.0);
  EXPECT_EQ(g.weighted_degree(0), 4.0);
}

TEST(BuildGraphTest, DanglingKeysLeaveTheIdSpace) {
  std::istringstream in("u1 i1 5\nu2 i2 1\nu1 i3 4\n");
  const auto t = binarize(load_edge_list(in), EdgeType::five_star, 3.5);
  const auto g = build_graph(t);
  EXPECT_EQ(g.user_count(), 1u);
  EXPECT_EQ(g.item_count(), 2u);
  EXPECT_FALSE(g.find(Side::user, "u2").has_value());
  EXPECT_FALSE(g.find(Side::item, "i2").has_value());
}

TEST(BuildGraphTest, UserAndItemKeysMayCoincide) {
  const auto g = graph_of("1 1\n1 2\n2 1\n");
  EXPECT_EQ(*g.find(Side::user, "1"), 0u);
  EXPECT_EQ(*g.find(Side::item, "1"), 2u);
  EXPECT_EQ(g.vertex_keys(), (std::vector<std::string>{"1", "2", "1", "2"}));
}

TEST(BuildGraphTest, RejectsUnusableTables) {
  EXPECT_THROW(build_graph(InteractionTable{}), DataError);
  InteractionTable zero;
  zero.rows.push_back({zero.users.intern("u"), zero.items.intern("i"), 0.0});
  EXPECT_THROW(build_graph(zero), DataError);
}

// Random tables: adjacency is symmetric, bipartite, and accounts for every edge.
TEST(BuildGraphTest, PropertyStructuralInvariants) {
  Rng gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    InteractionTable t;
    const std::size_t users = 1 + gen.below(30);
    const std::size_t items = 1 + gen.below(30);
    const std::size_t rows = 1 + gen.below(200);
    for (std::size_t r = 0; r < rows; ++r) {
      t.rows.push_back({t.users.intern("u" + std::to_string(gen.below(users))),
                        t.items.intern("i" + std::to_string(gen.below(items))),
                        0.5 + gen.uniform()});
    }
    const auto g = build_graph(t);
    EXPECT_NO_THROW(g.check_invariants());
    EXPECT_EQ(g.edge_count(), merge_duplicates(t).rows.size());
    std::size_t user_entries = 0;
    for (VertexId v = 0; v < g.user_count(); ++v) user_entries += g.degree(v);
    EXPECT_EQ(user_entries, g.edge_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      for (VertexId w : g.neighbors(v)) EXPECT_NE(g.side(v), g.side(w));
  }
}

TEST(SampleEdgeTest, SingleEdgeAlwaysReturned) {
  const auto g = graph_of("u i 3\n");
  Rng rng(2);
  for (int n = 0; n < 1000; ++n) EXPECT_EQ(g.sample_edge(rng), (Edge{0, 1}));
}

TEST(SampleEdgeTest, FrequenciesFollowEdgeWeights) {
  for (const auto& [w0, w1] : {std::pair{1.0, 1.0}, std::pair{1.0, 4.0}}) {
    std::ostringstream text;
    text << "u1 i1 " << w0 << "\nu2 i2 " << w1 << "\n";
    const auto g = graph_of(text.str());
    Rng rng(4);
    const auto freq = oracle::frequencies(
        [&] {
          const Edge e = g.sample_edge(rng);
          return e.user == *g.find(Side::user, "u1") ? 0 : 1;
        },
        2, kDraws);
    EXPECT_LT(oracle::max_abs_deviation(freq, oracle::normalized({w0, w1})), 0.01);
  }
}

TEST(SampleEdgeTest, DrawIsConstantTime) {
  const auto g = graph_of("a x 1\nb x 2\nc y 3\nd z 4\n");
  Rng rng(1);
  CountingDrawProbe probe;
  for (int n = 0; n < 50; ++n) g.sample_edge(rng, probe);
  EXPECT_EQ(probe.lookups, 50u);
  EXPECT_EQ(probe.compares, 50u);
}

TEST(RandomWalkTest, ForcedWalkOnPath) {
  const auto g = graph_of("u1 i1\n");
  Rng rng(0);
  EXPECT_EQ(g.random_walk(0, 2, rng), (std::vector<VertexId>{1, 0}));
}

TEST(RandomWalkTest, StarFirstStepIsUniform) {
  const auto g = graph_of("u1 i1\nu1 i2\n");
  Rng rng(6);
  const auto freq = oracle::frequencies([&] { return g.random_walk(0, 1, rng)[0] - 1; }, 2, kDraws);
  EXPECT_LT(oracle::max_abs_deviation(freq, {0.5, 0.5}), 0.01);
}

TEST(RandomWalkTest, TwoStepProbabilityMatchesPathEnumeration) {
  // u1-{i1,i2}, i1-{u1,u2}, i2-{u1}
  const auto g = graph_of("u1 i1\nu1 i2\nu2 i1\n");
  const VertexId u1 = *g.find(Side::user, "u1");
  const VertexId u2 = *g.find(Side::user, "u2");
  const auto exact = oracle::walk_marginals_by_paths(adjacency_of(g), u1, 2);
  EXPECT_DOUBLE_EQ(exact[1][u2], 0.25);

  Rng rng(12);
  std::vector<VertexId> walk(2);
  std::size_t hits = 0;
  for (std::size_t n = 0; n < kDraws; ++n) {
    g.random_walk(u1, walk, rng);
    hits += walk[1] == u2 ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(hits) / kDraws, 0.25, 0.01);
}

// Small random weighted graphs: every step's marginal matches enumeration.
TEST(RandomWalkTest, PropertyMarginalsMatchEnumeration) {
  Rng gen(99);
  for (int trial = 0; trial < 6; ++trial) {
    InteractionTable t;
    for (int u = 0; u < 3; ++u)
      for (int i = 0; i < 3; ++i)
        if (gen.below(3) != 0)
          t.rows.push_back({t.users.intern("u" + std::to_string(u)),
                            t.items.intern("i" + std::to_string(i)), 0.2 + 3.0 * gen.uniform()});
    if (t.rows.empty()) continue;
    const auto g = build_graph(t);
    ASSERT_LE(g.vertex_count(), 6u);
    const std::size_t k = 1 + gen.below(3);
    const VertexId start = static_cast<VertexId>(gen.below(g.vertex_count()));
    const auto exact = oracle::walk_marginals_by_paths(adjacency_of(g), start, k);

    std::vector<std::vector<double>> seen(k, std::vector<double>(g.vertex_count(), 0.0));
    Rng rng(trial);
    std::vector<VertexId> walk(k);
    for (std::size_t n = 0; n < kDraws; ++n) {
      g.random_walk(start, walk, rng);
      for (std::size_t j = 0; j < k; ++j) seen[j][walk[j]] += 1.0 / kDraws;
    }
    for (std::size_t j = 0; j < k; ++j) EXPECT_LT(oracle::max_abs_deviation(seen[j], exact[j]), 0.01);
  }
}

TEST(RandomWalkTest, SeededWalksRepeat) {
  const auto g = graph_of("a x\na y\nb y\nc x\nc z\n");
  Rng r1(5), r2(5);
  for (int n = 0; n < 200; ++n) ASSERT_EQ(g.random_walk(0, 4, r1), g.random_walk(0, 4, r2));
}

TEST(SampleNegativeTest, SingleItemSide) {
  const auto g = graph_of("u1 i\nu2 i\n");
  Rng rng(0);
  for (int n = 0; n < 100; ++n) EXPECT_EQ(g.sample_negative(Side::item, rng), 2u);
}

TEST(SampleNegativeTest, DegreeProportional) {
  // Item weight sums 1 and 3.
  const auto g = graph_of("u1 i1 1\nu1 i2 2\nu2 i2 1\n");
  EXPECT_NEAR(g.negative_probability(Side::item, 0), 0.25, 1e-15);
  Rng rng(21);
  const auto freq = oracle::frequencies(
      [&] { return g.sample_negative(Side::item, rng) - g.side_begin(Side::item); }, 2, kDraws);
  EXPECT_LT(oracle::max_abs_deviation(freq, {0.25, 0.75}), 0.01);
}

TEST(SampleNegativeTest, UniformOption) {
  const auto g = graph_of("u1 i1 1\nu1 i2 2\nu2 i2 1\nu3 i3 9\n");
  Rng rng(22);
  const auto freq = oracle::frequencies(
      [&] {
        return g.sample_negative(Side::item, rng, NegativeDistribution::uniform) -
               g.side_begin(Side::item);
      },
      3, kDraws);
  EXPECT_LT(oracle::max_abs_deviation(freq, {1.0 / 3, 1.0 / 3, 1.0 / 3}), 0.01);
}

TEST(SampleNegativeTest, ObservedNeighborsAreNotExcluded) {
  const auto g = graph_of("u1 i1\nu1 i2\nu2 i2\n");
  Rng rng(7);
  bool drew_neighbor = false;
  for (int n = 0; n < 1000 && !drew_neighbor; ++n)
    drew_neighbor = g.has_edge(0, g.sample_negative(Side::item, rng));
  EXPECT_TRUE(drew_neighbor);
}

TEST(SampleNegativeTest, StaysOnRequestedSide) {
  const auto g = graph_of("a x\nb y\nc x\nc z\n");
  Rng rng(3);
  for (int n = 0; n < 1000; ++n) {
    EXPECT_EQ(g.side(g.sample_negative(Side::user, rng)), Side::user);
    EXPECT_EQ(g.side(g.sample_negative(Side::item, rng)), Side::item);
  }
}

TEST(GraphStatsTest, WritesLineOrientedSummary) {
  const auto g = graph_of("u1 i1\nu1 i2\nu2 i1\n");
  std::ostringstream out;
  write_graph_stats(out, graph_stats(g));
  EXPECT_EQ(out.str(),
            "users 2\nitems 2\nvertices 4\nedges 3\ntotal_weight 3\ndensity 0.75\n");
}

}  // namespace
}  // namespace cse
