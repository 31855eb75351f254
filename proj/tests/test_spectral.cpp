#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "test_support.hpp"

using namespace gwdict;

namespace {

void expect_eigen_invariants(const Matrix& m, const EigenPairs& e) {
  const std::size_t n = m.rows();
  for (std::size_t k = 1; k < n; ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
  EXPECT_LE(gwtest::orthonormality_error(e.vectors), 1e-10);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
      worst = std::max(worst, std::abs(s - m(i, j)));
    }
  EXPECT_LE(worst, 1e-8 * std::max(1.0, m.max_abs()));
}

Matrix random_symmetric(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = d(rng);
  return m;
}

}  // namespace

TEST(SymEig, SingleEdge) {
  const std::vector<Edge> e{{0, 1, 1.0}};
  const EigenPairs p = sym_eig(laplacian(build_graph(2, e)));
  EXPECT_NEAR(p.values[0], 0.0, 1e-14);
  EXPECT_NEAR(p.values[1], 2.0, 1e-14);
  EXPECT_NEAR(p.vectors(0, 0), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(p.vectors(1, 0), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(SymEig, PathFourSpectrum) {
  const EigenPairs p = sym_eig(laplacian(path_graph(4)));
  const double want[4] = {0.0, 2.0 - std::sqrt(2.0), 2.0, 2.0 + std::sqrt(2.0)};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(p.values[k], want[k], 1e-12);
}

TEST(SymEig, PathSpectraMatchClosedForm) {
  for (std::size_t n = 2; n <= 64; ++n) {
    const EigenPairs p = sym_eig(laplacian(path_graph(n)));
    for (std::size_t k = 0; k < n; ++k)
      ASSERT_NEAR(p.values[k], 2.0 - 2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(n)),
                  1e-9)
          << "n=" << n << " k=" << k;
  }
}

TEST(SymEig, IdentityIsDegenerate) {
  const Matrix id = Matrix::identity(3);
  const EigenPairs p = sym_eig(id);
  for (double v : p.values) EXPECT_NEAR(v, 1.0, 1e-14);
  expect_eigen_invariants(id, p);
}

TEST(SymEig, RandomSymmetricInvariants) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Matrix m = random_symmetric(seed, 1 + seed % 30);
    expect_eigen_invariants(m, sym_eig(m));
  }
}

TEST(SymEig, SignConventionFirstNonzeroPositive) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix m = random_symmetric(seed + 50, 12);
    const EigenPairs p = sym_eig(m);
    for (std::size_t k = 0; k < 12; ++k) {
      for (std::size_t i = 0; i < 12; ++i) {
        if (std::abs(p.vectors(i, k)) > 1e-9) {
          EXPECT_GT(p.vectors(i, k), 0.0);
          break;
        }
      }
    }
  }
}

TEST(SymEig, RejectsAsymmetric) {
  Matrix m(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(sym_eig(m), InvalidInput);
}

TEST(SymEig, DeterministicAcrossCalls) {
  const Matrix m = laplacian(grid_graph(5, 5));
  const EigenPairs a = sym_eig(m);
  const EigenPairs b = sym_eig(m);
  EXPECT_EQ(a.values, b.values);
  for (std::size_t i = 0; i < 25; ++i)
    for (std::size_t k = 0; k < 25; ++k) EXPECT_EQ(a.vectors(i, k), b.vectors(i, k));
}

TEST(SymEig, ConnectedGraphsHaveSimpleZeroEigenvalue) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gwtest::random_connected_graph(seed, 256);
    if (g.size() < 2) continue;
    const EigenPairs p = sym_eig(laplacian(g));
    EXPECT_NEAR(p.values[0], 0.0, 1e-10);
    EXPECT_GT(p.values[1], 1e-9) << "seed " << seed;
  }
}

TEST(Gft, BandwidthOneIsConstant) {
  const Graph g = gwtest::random_weighted_graph(4, 9);
  const FourierBasis fb = gft(g, 1);
  ASSERT_EQ(fb.width(), 1u);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(fb.vectors(i, 0), 1.0 / 3.0);
}

TEST(Gft, Singleton) {
  const FourierBasis fb = gft(path_graph(1), 5);
  ASSERT_EQ(fb.width(), 1u);
  EXPECT_EQ(fb.vectors(0, 0), 1.0);
}

TEST(Gft, PathFourSecondColumnIsCosine) {
  const FourierBasis fb = gft(path_graph(4), 2);
  ASSERT_EQ(fb.width(), 2u);
  Vector c(4);
  for (std::size_t i = 0; i < 4; ++i) c[i] = std::cos((static_cast<double>(i) + 0.5) * std::numbers::pi / 4.0);
  const double s = norm(c);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(fb.vectors(i, 0), 0.5, 1e-15);
    EXPECT_NEAR(fb.vectors(i, 1), c[i] / s, 1e-12);
  }
}

TEST(Gft, RejectsDisconnectedAndZeroBandwidth) {
  const std::vector<Edge> e{{0, 1, 1.0}};
  EXPECT_THROW(gft(build_graph(3, e), 1), InvalidInput);
  EXPECT_THROW(gft(path_graph(3), 0), InvalidInput);
}

TEST(Gft, FullBasisIsParseval) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gwtest::random_weighted_graph(seed, 20);
    const FourierBasis fb = gft(g, g.size());
    EXPECT_LE(gwtest::orthonormality_error(fb.vectors), 1e-10);
    const Vector x = gwtest::random_vector(seed, g.size());
    const Vector a = fb.vectors.transpose() * x;
    EXPECT_NEAR(norm(a), norm(x), 1e-10 * norm(x));
  }
}

TEST(SpectralEnergyRatio, Examples) {
  const Graph g = gwtest::random_weighted_graph(2, 12);
  EXPECT_NEAR(spectral_energy_ratio(g, Vector(12, 3.0), 1), 1.0, 1e-12);
  const EigenPairs p = sym_eig(laplacian(g));
  EXPECT_NEAR(spectral_energy_ratio(g, p.vectors.col(11), 11), 0.0, 1e-12);
  EXPECT_NEAR(spectral_energy_ratio(g, gwtest::random_vector(1, 12), 12), 1.0, 1e-12);
  EXPECT_THROW(spectral_energy_ratio(g, Vector(12, 0.0), 1), InvalidInput);
}

TEST(SpectralEnergyRatio, BandlimitedSignalsReachOne) {
  const Graph g = grid_graph(4, 5);
  const EigenPairs p = sym_eig(laplacian(g));
  Vector x(20, 0.0);
  for (std::size_t k = 0; k < 6; ++k)
    for (std::size_t i = 0; i < 20; ++i) x[i] += static_cast<double>(k + 1) * p.vectors(i, k);
  EXPECT_NEAR(spectral_energy_ratio(g, x, 6), 1.0, 1e-10);
  EXPECT_LT(spectral_energy_ratio(g, x, 5), 1.0 - 1e-3);
}

TEST(EigenpairsCsv, ValuesRowThenNodes) {
  const EigenPairs p = sym_eig(laplacian(path_graph(3)));
  std::ostringstream os;
  write_eigenpairs_csv(os, p);
  std::istringstream in(os.str());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2);
    ++lines;
  }
  EXPECT_EQ(lines, 4u);
}
