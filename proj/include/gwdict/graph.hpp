#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gwdict/error.hpp"
#include "gwdict/matrix.hpp"
#include "gwdict/parallel.hpp"

namespace gwdict {

using NodeId = std::size_t;

// Undirected edge with u < v and positive weight.
struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node;
  double weight;
};

// Immutable undirected weighted graph with dense node ids 0..n-1.
// Adjacency is stored in CSR form with neighbors sorted by id.
class Graph {
 public:
  Graph() = default;

  // Canonicalizes (u < v), merges exact duplicates and rejects self-loops,
  // nonpositive weights and duplicates with conflicting weights.
  static Graph build(std::size_t n, std::span<const Edge> edges) {
    std::map<std::pair<NodeId, NodeId>, double> canon;
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n)
        throw InvalidInput("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") references a node outside 0.." + std::to_string(n ? n - 1 : 0));
      if (e.u == e.v) throw InvalidInput("self-loop at node " + std::to_string(e.u));
      if (!(e.weight > 0.0) || !std::isfinite(e.weight))
        throw InvalidInput("nonpositive edge weight on (" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + ")");
      const auto key = std::minmax(e.u, e.v);
      auto [it, inserted] = canon.emplace(key, e.weight);
      if (!inserted && it->second != e.weight)
        throw InvalidInput("duplicate edge (" + std::to_string(key.first) + "," +
                           std::to_string(key.second) + ") with conflicting weights");
    }
    Graph g;
    g.n_ = n;
    g.edges_.reserve(canon.size());
    for (const auto& [key, w] : canon) g.edges_.push_back({key.first, key.second, w});

    std::vector<std::size_t> count(n + 1, 0);
    for (const Edge& e : g.edges_) {
      ++count[e.u + 1];
      ++count[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) count[i + 1] += count[i];
    g.offsets_ = count;
    g.neighbors_.resize(2 * g.edges_.size());
    std::vector<std::size_t> fill(count.begin(), count.end() - 1);
    for (const Edge& e : g.edges_) {
      g.neighbors_[fill[e.u]++] = {e.v, e.weight};
      g.neighbors_[fill[e.v]++] = {e.u, e.weight};
    }
    g.degree_.assign(n, 0.0);
    for (NodeId i = 0; i < n; ++i) {
      auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
      auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
      std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
      for (auto it = first; it != last; ++it) g.degree_[i] += it->weight;
    }
    return g;
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const double> degrees() const noexcept { return degree_; }
  double degree(NodeId i) const { return degree_[i]; }

  std::span<const Neighbor> neighbors(NodeId i) const {
    return std::span<const Neighbor>(neighbors_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }

  Matrix adjacency() const {
    Matrix a(n_, n_);
    for (const Edge& e : edges_) a(e.u, e.v) = a(e.v, e.u) = e.weight;
    return a;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> neighbors_;
  Vector degree_;
};

inline Graph build_graph(std::size_t n, std::span<const Edge> edges) { return Graph::build(n, edges); }

// L = D - A
inline Matrix laplacian(const Graph& g) {
  Matrix l(g.size(), g.size());
  for (NodeId i = 0; i < g.size(); ++i) l(i, i) = g.degree(i);
  for (const Edge& e : g.edges()) {
    l(e.u, e.v) -= e.weight;
    l(e.v, e.u) -= e.weight;
  }
  return l;
}

// Edge-by-node first-difference operator. Row i for edge (j,k), j<k, holds
// -sqrt(w) at column j and +sqrt(w) at column k, so ΔᵀΔ = L.
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(const Graph& g) : n_(g.size()), edges_(g.edges().begin(), g.edges().end()) {}

  std::size_t rows() const noexcept { return edges_.size(); }
  std::size_t cols() const noexcept { return n_; }

  Vector apply(std::span<const double> x) const {
    if (x.size() != n_) throw InvalidInput("signal length does not match node count");
    Vector y(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      y[i] = std::sqrt(e.weight) * (x[e.v] - x[e.u]);
    }
    return y;
  }

  Matrix to_dense() const {
    Matrix d(edges_.size(), n_);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const double s = std::sqrt(edges_[i].weight);
      d(i, edges_[i].u) = -s;
      d(i, edges_[i].v) = s;
    }
    return d;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

inline IncidenceMatrix incidence(const Graph& g) { return IncidenceMatrix(g); }

// ‖Δx‖₀: edges whose endpoints carry different values (absolute tolerance).
inline std::size_t cut_count(const Graph& g, std::span<const double> x, double tol = 1e-12) {
  if (x.size() != g.size()) throw InvalidInput("signal length does not match node count");
  std::size_t cuts = 0;
  for (const Edge& e : g.edges())
    if (std::abs(x[e.u] - x[e.v]) > tol) ++cuts;
  return cuts;
}

// xᵀLx = Σ w (x_u - x_v)²
inline double quadratic_variation(const Graph& g, std::span<const double> x) {
  if (x.size() != g.size()) throw InvalidInput("signal length does not match node count");
  double s = 0.0;
  for (const Edge& e : g.edges()) {
    const double d = x[e.u] - x[e.v];
    s += e.weight * d * d;
  }
  return s;
}

// Node subset whose induced subgraph is connected. Nodes are kept sorted.
class Piece {
 public:
  // Validates nonemptiness and connectivity in g.
  Piece(const Graph& g, std::vector<NodeId> nodes);

  // For callers that already guarantee the invariants.
  static Piece trusted(std::vector<NodeId> sorted_nodes) {
    Piece p;
    p.nodes_ = std::move(sorted_nodes);
    return p;
  }

  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId front() const { return nodes_.front(); }
  bool contains(NodeId v) const { return std::binary_search(nodes_.begin(), nodes_.end(), v); }

  // 1_S as a dense n-vector.
  Vector indicator(std::size_t n) const {
    Vector v(n, 0.0);
    for (NodeId i : nodes_) v[i] = 1.0;
    return v;
  }

  friend bool operator==(const Piece&, const Piece&) = default;

 private:
  Piece() = default;
  std::vector<NodeId> nodes_;
};

// Connected components of the subgraph induced by `subset` (membership mask),
// each sorted; no ordering applied across components.
inline std::vector<std::vector<NodeId>> component_lists(const Graph& g, const std::vector<char>& in_subset) {
  std::vector<std::vector<NodeId>> comps;
  std::vector<char> seen(g.size(), 0);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.size(); ++s) {
    if (!in_subset[s] || seen[s]) continue;
    std::vector<NodeId> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (const Neighbor& nb : g.neighbors(u)) {
        if (in_subset[nb.node] && !seen[nb.node]) {
          seen[nb.node] = 1;
          stack.push_back(nb.node);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline bool is_connected_subset(const Graph& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) return false;
  std::vector<char> mask(g.size(), 0);
  for (NodeId v : nodes) {
    if (v >= g.size()) throw InvalidInput("node " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  return component_lists(g, mask).size() == 1;
}

inline bool is_connected(const Graph& g) {
  if (g.size() == 0) return false;
  std::vector<char> all(g.size(), 1);
  return component_lists(g, all).size() == 1;
}

inline Piece::Piece(const Graph& g, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.empty()) throw InvalidInput("a piece must be nonempty");
  if (!is_connected_subset(g, nodes)) throw InvalidInput("piece does not induce a connected subgraph");
  nodes_ = std::move(nodes);
}

// Components of the induced subgraph on `subset`, ascending by size, ties by
// smallest node index.
inline std::vector<Piece> connected_components(const Graph& g, std::span<const NodeId> subset) {
  std::vector<char> mask(g.size(), 0);
  for (NodeId v : subset) {
    if (v >= g.size()) throw InvalidInput("node " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  auto comps = component_lists(g, mask);
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
  });
  std::vector<Piece> out;
  out.reserve(comps.size());
  for (auto& c : comps) out.push_back(Piece::trusted(std::move(c)));
  return out;
}

// Subgraph induced by `nodes` (sorted), relabelled 0..|nodes|-1 in that order.
inline Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  constexpr NodeId kAbsent = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> local(g.size(), kAbsent);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const Neighbor& nb : g.neighbors(nodes[i])) {
      const NodeId j = local[nb.node];
      if (j != kAbsent && i < j) edges.push_back({i, j, nb.weight});
    }
  }
  return Graph::build(nodes.size(), edges);
}

enum class DistanceMetric {
  kHops,           // unweighted BFS
  kInverseWeight,  // Dijkstra with edge length 1/w
};

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Single-source BFS hop counts; unreachable nodes get -1.
inline std::vector<long> bfs_hops(const Graph& g, NodeId source) {
  std::vector<long> dist(g.size(), -1);
  std::vector<NodeId> queue;
  queue.reserve(g.size());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (const Neighbor& nb : g.neighbors(u)) {
      if (dist[nb.node] < 0) {
        dist[nb.node] = dist[u] + 1;
        queue.push_back(nb.node);
      }
    }
  }
  return dist;
}

// Single-source distances under `metric`; unreachable nodes get +inf.
inline Vector distances_from(const Graph& g, NodeId source, DistanceMetric metric) {
  Vector dist(g.size(), kUnreachable);
  if (metric == DistanceMetric::kHops) {
    const auto hops = bfs_hops(g, source);
    for (NodeId v = 0; v < g.size(); ++v)
      if (hops[v] >= 0) dist[v] = static_cast<double>(hops[v]);
    return dist;
  }
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const Neighbor& nb : g.neighbors(u)) {
      const double nd = d + 1.0 / nb.weight;
      if (nd < dist[nb.node]) {
        dist[nb.node] = nd;
        heap.emplace(nd, nb.node);
      }
    }
  }
  return dist;
}

// All-pairs geodesic distances. Rows are computed independently, possibly in
// parallel; each row is deterministic so the matrix is too. The lower
// triangle mirrors the upper so weighted sums rounded in different orders
// still give an exactly symmetric matrix.
inline Matrix geodesic_matrix(const Graph& g, DistanceMetric metric = DistanceMetric::kHops) {
  if (!is_connected(g)) throw InvalidInput("geodesic distances need a connected graph");
  Matrix d(g.size(), g.size());
  parallel_for(g.size(), [&](std::size_t s) {
    const Vector row = distances_from(g, s, metric);
    std::copy(row.begin(), row.end(), d.row(s).begin());
  });
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) d(i, j) = d(j, i);
  return d;
}

}  // namespace gwdict
