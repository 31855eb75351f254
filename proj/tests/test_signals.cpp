#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_support.hpp"

using namespace gwdict;

namespace {

void expect_partition(const Graph& g, const Partition& p, std::size_t count) {
  EXPECT_EQ(p.pieces.size(), count);
  EXPECT_TRUE(is_partition(g, p.pieces));
  std::vector<int> hits(g.size(), 0);
  for (std::size_t c = 0; c < p.pieces.size(); ++c) {
    EXPECT_TRUE(is_connected_subset(g, p.pieces[c].nodes()));
    for (NodeId v : p.pieces[c].nodes()) {
      ++hits[v];
      EXPECT_EQ(p.label[v], c);
    }
  }
  for (int h : hits) EXPECT_EQ(h, 1);
}

}  // namespace

TEST(GenPieces, Extremes) {
  const Graph g = gwtest::random_connected_graph(4, 50, 10);
  const PartitionTree t = decompose(g);
  Rng rng(1);
  const Partition one = gen_pieces(t, 1, rng);
  ASSERT_EQ(one.pieces.size(), 1u);
  EXPECT_EQ(one.pieces[0].size(), g.size());
  const Partition all = gen_pieces(t, g.size(), rng);
  expect_partition(g, all, g.size());
  for (const Piece& p : all.pieces) EXPECT_EQ(p.size(), 1u);
  EXPECT_THROW(gen_pieces(t, g.size() + 1, rng), InvalidInput);
  EXPECT_THROW(gen_pieces(t, 0, rng), InvalidInput);
}

TEST(GenPieces, PathFourTwoPieces) {
  const PartitionTree t = decompose(path_graph(4));
  Rng rng(9);
  const Partition p = gen_pieces(t, 2, rng);
  ASSERT_EQ(p.pieces.size(), 2u);
  EXPECT_TRUE(p.pieces[0] == Piece::trusted({0, 1}));
  EXPECT_TRUE(p.pieces[1] == Piece::trusted({2, 3}));
}

TEST(GenPieces, AlwaysTreeConsistentPartitions) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = gwtest::random_connected_graph(seed + 200, 120, 2);
    const PartitionTree t = decompose(g);
    Rng rng(seed);
    const std::size_t c = 1 + seed % std::min<std::size_t>(g.size(), 12);
    const Partition p = gen_pieces(t, c, rng);
    expect_partition(g, p, c);
    ASSERT_EQ(p.tree_node.size(), c);
    for (std::size_t i = 0; i < c; ++i) EXPECT_TRUE(t.node(p.tree_node[i]).piece == p.pieces[i]);
  }
}

TEST(GenArbitraryPieces, ConnectedPartitions) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gwtest::random_connected_graph(seed + 300, 100, 2);
    Rng rng(seed);
    const std::size_t c = 1 + seed % std::min<std::size_t>(g.size(), 9);
    expect_partition(g, gen_arbitrary_pieces(g, c, rng), c);
  }
}

TEST(GenPc, Examples) {
  const Graph g = path_graph(4);
  const PartitionTree t = decompose(g);
  Rng rng(2);
  const PcSignal one = gen_pc(gen_pieces(t, 1, rng), rng, false);
  EXPECT_EQ(cut_count(g, one.values), 0u);
  const PcSignal two = gen_pc(gen_pieces(t, 2, rng), rng, true);
  EXPECT_EQ(cut_count(g, two.values), 1u);
}

TEST(GenPc, ValuesPiecewiseConstantAndInRange) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = gwtest::random_connected_graph(seed + 400, 100, 2);
    const PartitionTree t = decompose(g);
    Rng rng(seed);
    const std::size_t c = 1 + seed % std::min<std::size_t>(g.size(), 40);
    const bool distinct = seed % 2 == 0;
    const PcSignal x = gen_pc(gen_pieces(t, c, rng), rng, distinct);
    std::size_t cross = 0;
    for (const Edge& e : g.edges()) cross += x.pieces.label[e.u] != x.pieces.label[e.v];
    if (distinct) {
      EXPECT_EQ(cut_count(g, x.values), cross);
      EXPECT_EQ(std::set<long>(x.piece_values.begin(), x.piece_values.end()).size(), c);
    } else {
      EXPECT_LE(cut_count(g, x.values), cross);
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
      const long a = x.piece_values[x.pieces.label[v]];
      EXPECT_EQ(x.values[v], static_cast<double>(a));
      EXPECT_NE(a, 0);
      if (c <= 16 || !distinct) {
        EXPECT_LE(std::abs(a), 8);
      }
    }
  }
}

TEST(GenPbl, ProjectorIdentityPerPiece) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gwtest::random_connected_graph(seed + 500, 80, 4);
    const PartitionTree t = decompose(g);
    Rng rng(seed);
    const std::size_t k = 1 + seed % 5;
    const PblSignal x = gen_pbl(g, gen_pieces(t, 1 + seed % 4, rng), k, rng);
    for (const Piece& p : x.pieces.pieces) {
      Vector xs;
      for (NodeId v : p.nodes()) xs.push_back(x.values[v]);
      if (squared_norm(xs) == 0.0) continue;
      const Graph sub = induced_subgraph(g, p.nodes());
      EXPECT_NEAR(spectral_energy_ratio(sub, xs, k), 1.0, 1e-10);
    }
  }
}

TEST(GenPbl, BandwidthOneIsPiecewiseConstant) {
  const Graph g = grid_graph(6, 6);
  const PartitionTree t = decompose(g);
  Rng rng(3);
  const PblSignal x = gen_pbl(g, gen_pieces(t, 3, rng), 1, rng);
  for (const Piece& p : x.pieces.pieces)
    for (NodeId v : p.nodes()) EXPECT_NEAR(x.values[v], x.values[p.front()], 1e-12);
}

TEST(AddNoise, ZeroSigmaSeedAndVariance) {
  const Vector x = gwtest::random_vector(1, 5000);
  Rng a(7);
  EXPECT_EQ(add_noise(x, 0.0, a), x);
  Rng b(42), c(42);
  const Vector y1 = add_noise(x, 0.3, b);
  const Vector y2 = add_noise(x, 0.3, c);
  EXPECT_EQ(y1, y2);
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mean += y1[i] - x[i];
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) var += (y1[i] - x[i] - mean) * (y1[i] - x[i] - mean);
  var /= static_cast<double>(x.size() - 1);
  EXPECT_NEAR(var, 0.09, 0.009);
  Rng d(1);
  EXPECT_THROW(add_noise(x, -1.0, d), InvalidInput);
}

TEST(RngTest, SplitStreamsDifferAndRepeat) {
  const Rng base(5);
  Rng a = base.split(1), b = base.split(1), c = base.split(2);
  const double va = a.normal();
  EXPECT_EQ(va, b.normal());
  EXPECT_NE(va, c.normal());
}

TEST(GenGraph, Families) {
  GraphParams p;
  p.nodes = 4;
  EXPECT_EQ(gen_graph(GraphFamily::kPath, p, 0).edge_count(), 3u);
  p.rows = 4;
  p.cols = 4;
  const Graph grid = gen_graph(GraphFamily::kGrid, p, 0);
  EXPECT_EQ(grid.size(), 16u);
  EXPECT_EQ(grid.edge_count(), 24u);
  p.nodes = 6;
  EXPECT_EQ(gen_graph(GraphFamily::kRing, p, 0).edge_count(), 6u);
  EXPECT_EQ(gen_graph(GraphFamily::kStar, p, 0).degree(0), 5.0);
  EXPECT_THROW(parse_graph_family("torus"), InvalidInput);
}

TEST(GenGraph, RandomGeometricFiveHundred) {
  GraphParams p;
  p.nodes = 500;
  p.radius = 0.1;
  const Graph a = gen_graph(GraphFamily::kRandomGeometric, p, 1);
  const Graph b = gen_graph(GraphFamily::kRandomGeometric, p, 1);
  EXPECT_EQ(a.size(), 500u);
  EXPECT_TRUE(is_connected(a));
  ASSERT_EQ(a.edge_count(), b.edge_count());
  for (std::size_t i = 0; i < a.edge_count(); ++i) EXPECT_EQ(a.edges()[i].weight, b.edges()[i].weight);
}

TEST(GenGraph, ErdosRenyiConnectedOrRejected) {
  GraphParams p;
  p.nodes = 60;
  p.probability = 0.15;
  EXPECT_TRUE(is_connected(gen_graph(GraphFamily::kErdosRenyi, p, 3)));
  p.probability = 0.001;
  EXPECT_THROW(gen_graph(GraphFamily::kErdosRenyi, p, 3), InvalidInput);
}
