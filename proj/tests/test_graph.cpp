#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace gwdict;

namespace {

Graph path4() { return path_graph(4); }

Graph triangle() {
  const std::vector<Edge> e{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
  return build_graph(3, e);
}

}  // namespace

TEST(BuildGraph, PathDegrees) {
  const Graph g = path4();
  EXPECT_EQ(g.edge_count(), 3u);
  const std::vector<double> want{1, 2, 2, 1};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(g.degree(i), want[i]);
}

TEST(BuildGraph, TriangleLaplacianDiagonal) {
  const Matrix l = laplacian(triangle());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(l(i, i), 2.0);
}

TEST(BuildGraph, CanonicalizesAndMergesExactDuplicates) {
  const std::vector<Edge> e{{2, 0, 1.5}, {0, 2, 1.5}, {1, 0, 2.0}};
  const Graph g = build_graph(3, e);
  ASSERT_EQ(g.edge_count(), 2u);
  for (const Edge& x : g.edges()) EXPECT_LT(x.u, x.v);
  EXPECT_DOUBLE_EQ(g.degree(0), 3.5);
}

TEST(BuildGraph, RejectsBadEdges) {
  const std::vector<Edge> loop{{1, 1, 1.0}};
  const std::vector<Edge> conflict{{0, 1, 1.0}, {1, 0, 2.0}};
  const std::vector<Edge> zero{{0, 1, 0.0}};
  const std::vector<Edge> negative{{0, 1, -1.0}};
  const std::vector<Edge> range{{0, 5, 1.0}};
  EXPECT_THROW(build_graph(2, loop), InvalidInput);
  EXPECT_THROW(build_graph(2, conflict), InvalidInput);
  EXPECT_THROW(build_graph(2, zero), InvalidInput);
  EXPECT_THROW(build_graph(2, negative), InvalidInput);
  EXPECT_THROW(build_graph(2, range), InvalidInput);
}

TEST(BuildGraph, AdjacencySymmetricAndDegreeIsRowSum) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gwtest::random_weighted_graph(seed, 30);
    const Matrix a = g.adjacency();
    for (std::size_t i = 0; i < g.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        EXPECT_EQ(a(i, j), a(j, i));
        s += a(i, j);
      }
      EXPECT_NEAR(s, g.degree(i), 1e-12);
    }
  }
}

TEST(Laplacian, SingleEdge) {
  const std::vector<Edge> e{{0, 1, 1.0}};
  const Matrix l = laplacian(build_graph(2, e));
  EXPECT_EQ(l(0, 0), 1.0);
  EXPECT_EQ(l(0, 1), -1.0);
  EXPECT_EQ(l(1, 0), -1.0);
  EXPECT_EQ(l(1, 1), 1.0);
}

TEST(Laplacian, PathIsTridiagonal) {
  const Matrix l = laplacian(path4());
  const double want[4][4] = {{1, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 1}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(l(i, j), want[i][j]);
}

TEST(Laplacian, AnnihilatesConstants) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gwtest::random_weighted_graph(seed, 25);
    const Vector y = laplacian(g) * Vector(g.size(), 1.0);
    EXPECT_LT(max_abs(y), 1e-12);
  }
}

TEST(Incidence, SingleEdgeWeightFour) {
  const std::vector<Edge> e{{0, 1, 4.0}};
  const Matrix d = incidence(build_graph(2, e)).to_dense();
  EXPECT_EQ(d(0, 0), -2.0);
  EXPECT_EQ(d(0, 1), 2.0);
}

TEST(Incidence, TriangleRowsHaveOneMinusOnePlusOne) {
  const Matrix d = incidence(triangle()).to_dense();
  ASSERT_EQ(d.rows(), 3u);
  for (std::size_t r = 0; r < 3; ++r) {
    int minus = 0, plus = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      if (d(r, c) == -1.0) ++minus;
      if (d(r, c) == 1.0) ++plus;
    }
    EXPECT_EQ(minus, 1);
    EXPECT_EQ(plus, 1);
  }
}

// ΔᵀΔ against an independently assembled Laplacian.
TEST(Incidence, GramEqualsLaplacianOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + seed * 126 / 49;
    const Graph g = gwtest::random_weighted_graph(seed + 100, n);
    const Matrix d = incidence(g).to_dense();
    const Matrix l = gwtest::dense_laplacian(g);
    const double scale = std::max(1.0, l.max_abs());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < d.rows(); ++r) s += d(r, i) * d(r, j);
        ASSERT_NEAR(s, l(i, j), 1e-12 * scale) << "seed " << seed;
      }
  }
}

TEST(CutCount, Examples) {
  const Graph g = path4();
  EXPECT_EQ(cut_count(g, Vector{2, 2, 2, 2}), 0u);
  EXPECT_EQ(cut_count(g, Vector{1, 1, 0, 0}), 1u);
  EXPECT_EQ(cut_count(g, Vector{1, 0, 1, 0}), 3u);
}

TEST(CutCount, BoundedByEdgesAndZeroIffPiecewiseConstantOnComponents) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gwtest::random_weighted_graph(seed, 20);
    Vector x(g.size());
    for (double& v : x) v = static_cast<double>(rng() % 3);
    EXPECT_LE(cut_count(g, x), g.edge_count());
    EXPECT_EQ(cut_count(g, Vector(g.size(), 7.0)), 0u);
    bool constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
    EXPECT_EQ(cut_count(g, x) == 0, constant);  // random graphs are connected
  }
}

TEST(QuadraticVariation, Examples) {
  const std::vector<Edge> e{{0, 1, 1.0}};
  EXPECT_DOUBLE_EQ(quadratic_variation(build_graph(2, e), Vector{1, 0}), 1.0 + 1.0 - 1.0);
  EXPECT_DOUBLE_EQ(quadratic_variation(path4(), Vector{0, 1, 2, 3}), 3.0);
  EXPECT_DOUBLE_EQ(quadratic_variation(path4(), Vector{5, 5, 5, 5}), 0.0);
}

TEST(QuadraticVariation, UnitEdgeValueIsOne) {
  // xᵀLx for x = [1, 0] on a unit edge is (1 − 0)² = 1.
  const std::vector<Edge> e{{0, 1, 1.0}};
  EXPECT_DOUBLE_EQ(quadratic_variation(build_graph(2, e), Vector{1, 0}), 1.0);
}

TEST(QuadraticVariation, EqualsIncidenceNormSquared) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = gwtest::random_weighted_graph(seed + 7, 5 + seed % 40);
    const Vector x = gwtest::random_vector(seed, g.size());
    const double q = quadratic_variation(g, x);
    const double d = squared_norm(incidence(g).apply(x));
    EXPECT_GE(q, 0.0);
    EXPECT_NEAR(q, d, 1e-10 * std::max(1.0, d));
  }
}

TEST(ConnectedComponents, Examples) {
  const Graph g = path4();
  const std::vector<NodeId> a{0, 1};
  const auto ca = connected_components(g, a);
  ASSERT_EQ(ca.size(), 1u);
  EXPECT_EQ(std::vector<NodeId>(ca[0].nodes().begin(), ca[0].nodes().end()), a);
  const std::vector<NodeId> b{0, 3};
  const auto cb = connected_components(g, b);
  ASSERT_EQ(cb.size(), 2u);
  EXPECT_EQ(cb[0].front(), 0u);
  EXPECT_EQ(cb[1].front(), 3u);
  const std::vector<NodeId> all{0, 1, 2, 3};
  EXPECT_EQ(connected_components(g, all).size(), 1u);
  EXPECT_TRUE(connected_components(g, std::vector<NodeId>{}).empty());
}

TEST(ConnectedComponents, SortedBySizeThenMinIndex) {
  const Graph g = path_graph(10);
  const std::vector<NodeId> s{0, 1, 2, 4, 6, 7, 9};
  const auto c = connected_components(g, s);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0].front(), 4u);
  EXPECT_EQ(c[1].front(), 9u);
  EXPECT_EQ(c[2].front(), 6u);
  EXPECT_EQ(c[3].front(), 0u);
}

TEST(PieceType, RejectsDisconnectedAndEmpty) {
  const Graph g = path4();
  EXPECT_THROW(Piece(g, {0, 2}), InvalidInput);
  EXPECT_THROW(Piece(g, {}), InvalidInput);
  const Piece p(g, {2, 1});
  EXPECT_EQ(p.front(), 1u);
  EXPECT_TRUE(p.contains(2));
}

TEST(GeodesicMatrix, Examples) {
  EXPECT_EQ(geodesic_matrix(path4())(0, 3), 3.0);
  const Matrix t = geodesic_matrix(triangle());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(t(i, j), i == j ? 0.0 : 1.0);
  const Matrix s = geodesic_matrix(star_graph(5));
  EXPECT_EQ(s(1, 4), 2.0);
}

TEST(GeodesicMatrix, RejectsDisconnected) {
  const std::vector<Edge> e{{0, 1, 1.0}, {2, 3, 1.0}};
  EXPECT_THROW(geodesic_matrix(build_graph(4, e)), InvalidInput);
}

TEST(GeodesicMatrix, MatchesFloydWarshallAndTriangleInequality) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gwtest::random_weighted_graph(seed + 300, 10 + seed * 3);
    for (bool inverse : {false, true}) {
      const Matrix d = geodesic_matrix(g, inverse ? DistanceMetric::kInverseWeight : DistanceMetric::kHops);
      const auto fw = gwtest::floyd_warshall(g, inverse);
      for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_EQ(d(i, i), 0.0);
        for (std::size_t j = 0; j < g.size(); ++j) {
          EXPECT_NEAR(d(i, j), fw[i][j], 1e-12 * std::max(1.0, fw[i][j]));
          EXPECT_EQ(d(i, j), d(j, i));
        }
      }
      std::mt19937_64 rng(seed);
      for (int t = 0; t < 200; ++t) {
        const std::size_t u = rng() % g.size(), v = rng() % g.size(), m = rng() % g.size();
        EXPECT_LE(d(u, v), d(u, m) + d(m, v) + 1e-12);
      }
    }
  }
}

TEST(GeodesicMatrix, ParallelRowsMatchSequential) {
  const Graph g = gwtest::random_weighted_graph(5, 80);
  setenv("GWDICT_THREADS", "1", 1);
  const Matrix a = geodesic_matrix(g);
  setenv("GWDICT_THREADS", "4", 1);
  const Matrix b = geodesic_matrix(g);
  unsetenv("GWDICT_THREADS");
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(a(i, j), b(i, j));
}

TEST(InducedSubgraph, KeepsInternalEdgesOnly) {
  const Graph g = path_graph(5);
  const std::vector<NodeId> s{1, 2, 4};
  const Graph h = induced_subgraph(g, s);
  EXPECT_EQ(h.size(), 3u);
  EXPECT_EQ(h.edge_count(), 1u);
  EXPECT_FALSE(is_connected(h));
}
