#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwdict/error.hpp"
#include "gwdict/graph.hpp"
#include "gwdict/matrix.hpp"
#include "gwdict/multires.hpp"
#include "gwdict/spectral.hpp"

namespace gwdict {

// Seeded 64-bit generator. split() derives an independent stream so trials
// can be reproduced individually.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::mt19937_64& engine() noexcept { return engine_; }

  Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x632be59bd9b4e019ULL))); }

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  // Uniform integer in [lo, hi].
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Disjoint connected pieces covering the node set.
struct Partition {
  std::vector<Piece> pieces;          // ordered by smallest node
  std::vector<std::size_t> label;     // piece index per node
  std::vector<std::size_t> tree_node; // generating tree node per piece, when tree-consistent
};

namespace detail {

inline Partition finish_partition(std::size_t n, std::vector<std::pair<Piece, std::size_t>> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) { return a.first.front() < b.first.front(); });
  Partition out;
  out.label.assign(n, 0);
  for (std::size_t c = 0; c < pieces.size(); ++c) {
    for (NodeId v : pieces[c].first.nodes()) out.label[v] = c;
    out.pieces.push_back(std::move(pieces[c].first));
    out.tree_node.push_back(pieces[c].second);
  }
  return out;
}

}  // namespace detail

// True when the pieces are nonempty, pairwise disjoint, cover 0..n-1 and
// each induces a connected subgraph of g.
inline bool is_partition(const Graph& g, std::span<const Piece> pieces) {
  std::vector<int> hits(g.size(), 0);
  for (const Piece& p : pieces) {
    for (NodeId v : p.nodes()) {
      if (v >= g.size()) return false;
      ++hits[v];
    }
    if (!is_connected_subset(g, p.nodes())) return false;
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

// Tree-consistent pieces: the shallowest tree frontier with at least C
// pieces, then random sibling merges until exactly C remain.
inline Partition gen_pieces(const PartitionTree& tree, std::size_t count, Rng& rng) {
  const std::size_t n = tree.graph_size();
  if (count < 1 || count > n) throw InvalidInput("piece count must lie in 1..N");

  // frontier(ℓ): nodes at level ℓ plus shallower leaves.
  std::vector<std::size_t> frontier{0};
  std::size_t level = 0;
  while (frontier.size() < count) {
    std::vector<std::size_t> next;
    for (std::size_t id : frontier) {
      const TreeNode& t = tree.node(id);
      if (t.is_leaf()) {
        next.push_back(id);
      } else {
        next.push_back(*t.left);
        next.push_back(*t.right);
      }
    }
    frontier = std::move(next);
    ++level;
  }
  std::sort(frontier.begin(), frontier.end());

  while (frontier.size() > count) {
    // Sibling pairs at the frontier level that are both still present.
    std::vector<std::size_t> parents;
    for (std::size_t id : frontier) {
      const TreeNode& t = tree.node(id);
      if (t.level != level || !t.parent) continue;
      const TreeNode& p = tree.node(*t.parent);
      if (*p.left == id && std::binary_search(frontier.begin(), frontier.end(), *p.right))
        parents.push_back(*t.parent);
    }
    if (parents.empty()) throw InvariantViolation("no sibling pair left to merge");
    const std::size_t pick = parents[static_cast<std::size_t>(rng.integer(0, static_cast<long>(parents.size()) - 1))];
    const TreeNode& p = tree.node(pick);
    std::erase(frontier, *p.left);
    std::erase(frontier, *p.right);
    frontier.insert(std::upper_bound(frontier.begin(), frontier.end(), pick), pick);
  }

  std::vector<std::pair<Piece, std::size_t>> pieces;
  for (std::size_t id : frontier) pieces.emplace_back(tree.node(id).piece, id);
  return detail::finish_partition(n, std::move(pieces));
}

// Pieces grown from C random seeds by randomized multi-source BFS; they need
// not align with any partition tree.
inline Partition gen_arbitrary_pieces(const Graph& g, std::size_t count, Rng& rng) {
  const std::size_t n = g.size();
  if (count < 1 || count > n) throw InvalidInput("piece count must lie in 1..N");
  if (!is_connected(g)) throw InvalidInput("piece generation needs a connected graph");
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  std::shuffle(nodes.begin(), nodes.end(), rng.engine());
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n, kFree);
  std::vector<std::pair<NodeId, std::size_t>> frontier;
  for (std::size_t c = 0; c < count; ++c) {
    owner[nodes[c]] = c;
    for (const Neighbor& nb : g.neighbors(nodes[c])) frontier.emplace_back(nb.node, c);
  }
  while (!frontier.empty()) {
    const auto k = static_cast<std::size_t>(rng.integer(0, static_cast<long>(frontier.size()) - 1));
    const auto [v, c] = frontier[k];
    frontier[k] = frontier.back();
    frontier.pop_back();
    if (owner[v] != kFree) continue;
    owner[v] = c;
    for (const Neighbor& nb : g.neighbors(v))
      if (owner[nb.node] == kFree) frontier.emplace_back(nb.node, c);
  }
  std::vector<std::vector<NodeId>> members(count);
  for (NodeId v = 0; v < n; ++v) members[owner[v]].push_back(v);
  std::vector<std::pair<Piece, std::size_t>> pieces;
  for (auto& m : members) pieces.emplace_back(Piece::trusted(std::move(m)), kFree);
  return detail::finish_partition(n, std::move(pieces));
}

// Piecewise-constant signal x = Σ a_c 1_{S_c}.
struct PcSignal {
  Vector values;
  Partition pieces;
  std::vector<long> piece_values;
};

// Integer piece values from {−8..8}\{0}; `distinct` forces pairwise
// different values, widening the range when C > 16.
inline PcSignal gen_pc(const Partition& pieces, Rng& rng, bool distinct) {
  const std::size_t count = pieces.pieces.size();
  PcSignal out;
  out.pieces = pieces;
  long range = 8;
  if (distinct) {
    while (static_cast<std::size_t>(2 * range) < count) range *= 2;
    std::vector<long> pool;
    for (long v = -range; v <= range; ++v)
      if (v != 0) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng.engine());
    out.piece_values.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
  } else {
    for (std::size_t c = 0; c < count; ++c) {
      long v = rng.integer(-range, range - 1);
      out.piece_values.push_back(v >= 0 ? v + 1 : v);
    }
  }
  out.values.assign(pieces.label.size(), 0.0);
  for (std::size_t v = 0; v < pieces.label.size(); ++v)
    out.values[v] = static_cast<double>(out.piece_values[pieces.label[v]]);
  return out;
}

// Piecewise-bandlimited signal: on each piece a standard-normal combination
// of the first min(K, |S_c|) eigenvectors of the piece's subgraph.
struct PblSignal {
  Vector values;
  Partition pieces;
  std::size_t bandwidth = 1;
  std::vector<Vector> coefficients;  // per piece
};

inline PblSignal gen_pbl(const Graph& g, const Partition& pieces, std::size_t bandwidth, Rng& rng) {
  if (bandwidth < 1) throw InvalidInput("bandwidth must be at least 1");
  PblSignal out;
  out.pieces = pieces;
  out.bandwidth = bandwidth;
  out.values.assign(g.size(), 0.0);
  for (const Piece& piece : pieces.pieces) {
    const FourierBasis fb = gft(induced_subgraph(g, piece.nodes()), bandwidth);
    Vector coef(fb.width());
    for (double& c : coef) c = rng.normal();
    for (std::size_t i = 0; i < piece.size(); ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < fb.width(); ++k) s += fb.vectors(i, k) * coef[k];
      out.values[piece.nodes()[i]] = s;
    }
    out.coefficients.push_back(std::move(coef));
  }
  return out;
}

// y = x + ε with ε i.i.d. N(0, σ²).
inline Vector add_noise(std::span<const double> x, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw InvalidInput("noise level must be nonnegative");
  Vector y(x.begin(), x.end());
  if (sigma == 0.0) return y;
  for (double& v : y) v += sigma * rng.normal();
  return y;
}

enum class GraphFamily { kPath, kRing, kGrid, kStar, kRandomGeometric, kErdosRenyi };

inline GraphFamily parse_graph_family(std::string_view name) {
  if (name == "path") return GraphFamily::kPath;
  if (name == "ring") return GraphFamily::kRing;
  if (name == "grid") return GraphFamily::kGrid;
  if (name == "star") return GraphFamily::kStar;
  if (name == "random_geometric" || name == "geometric") return GraphFamily::kRandomGeometric;
  if (name == "erdos_renyi" || name == "er") return GraphFamily::kErdosRenyi;
  throw InvalidInput("unknown graph family '" + std::string(name) + "'");
}

inline std::string_view to_string(GraphFamily f) {
  switch (f) {
    case GraphFamily::kPath: return "path";
    case GraphFamily::kRing: return "ring";
    case GraphFamily::kGrid: return "grid";
    case GraphFamily::kStar: return "star";
    case GraphFamily::kRandomGeometric: return "random_geometric";
    case GraphFamily::kErdosRenyi: return "erdos_renyi";
  }
  return "unknown";
}

struct GraphParams {
  std::size_t nodes = 0;   // path, ring, star, random families
  std::size_t rows = 0;    // grid
  std::size_t cols = 0;    // grid
  double radius = 0.0;     // random_geometric: connection radius in the unit square
  double probability = 0;  // erdos_renyi: edge probability
};

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  return Graph::build(n, e);
}

inline Graph ring_graph(std::size_t n) {
  if (n < 3) throw InvalidInput("a ring needs at least 3 nodes");
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0});
  return Graph::build(n, e);
}

inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw InvalidInput("grid dimensions must be positive");
  std::vector<Edge> e;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const NodeId i = r * cols + c;
      if (c + 1 < cols) e.push_back({i, i + 1, 1.0});
      if (r + 1 < rows) e.push_back({i, i + cols, 1.0});
    }
  return Graph::build(rows * cols, e);
}

// Center 0 joined to leaves 1..n-1.
inline Graph star_graph(std::size_t n) {
  if (n < 2) throw InvalidInput("a star needs at least 2 nodes");
  std::vector<Edge> e;
  for (NodeId i = 1; i < n; ++i) e.push_back({0, i, 1.0});
  return Graph::build(n, e);
}

// Connected synthetic graph, deterministic in `seed`. Random families are
// redrawn (up to 100 times) until connected. Geometric edges carry a
// Gaussian-kernel weight exp(-d²/r²).
inline Graph gen_graph(GraphFamily family, const GraphParams& params, std::uint64_t seed) {
  switch (family) {
    case GraphFamily::kPath:
      if (params.nodes < 1) throw InvalidInput("path needs at least 1 node");
      return path_graph(params.nodes);
    case GraphFamily::kRing: return ring_graph(params.nodes);
    case GraphFamily::kGrid: return grid_graph(params.rows, params.cols);
    case GraphFamily::kStar: return star_graph(params.nodes);
    case GraphFamily::kRandomGeometric:
    case GraphFamily::kErdosRenyi: break;
  }
  const std::size_t n = params.nodes;
  if (n < 1) throw InvalidInput("random graphs need at least 1 node");
  if (family == GraphFamily::kRandomGeometric && !(params.radius > 0.0))
    throw InvalidInput("random_geometric needs a positive radius");
  if (family == GraphFamily::kErdosRenyi && !(params.probability > 0.0 && params.probability <= 1.0))
    throw InvalidInput("erdos_renyi needs an edge probability in (0, 1]");
  Rng base(seed);
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    Rng rng = base.split(attempt);
    std::vector<Edge> edges;
    if (family == GraphFamily::kRandomGeometric) {
      std::vector<std::pair<double, double>> pts(n);
      for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
      const double r2 = params.radius * params.radius;
      for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) {
          const double dx = pts[i].first - pts[j].first;
          const double dy = pts[i].second - pts[j].second;
          const double d2 = dx * dx + dy * dy;
          if (d2 < r2) edges.push_back({i, j, std::exp(-d2 / r2)});
        }
    } else {
      for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
          if (rng.uniform() < params.probability) edges.push_back({i, j, 1.0});
    }
    Graph g = Graph::build(n, edges);
    if (is_connected(g)) return g;
  }
  throw InvalidInput(std::string(to_string(family)) + " parameters produced no connected graph in 100 attempts");
}

}  // namespace gwdict
