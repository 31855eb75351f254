#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwdict/error.hpp"
#include "gwdict/graph.hpp"

namespace gwdict {

struct HubPair {
  NodeId first;
  NodeId second;
  double distance;
};

namespace detail {

// Lexicographically smallest (i, j), i < j, maximizing the hop distance.
// Eccentricity bounds from each BFS, lo(w) >= max(d(v,w), ecc(v) - d(v,w))
// and hi(w) <= ecc(v) + d(v,w), prune sources that cannot reach the
// diameter, so the answer matches a full distance-matrix scan.
inline HubPair diametral_pair_hops(const Graph& g) {
  const std::size_t n = g.size();
  constexpr long kInf = std::numeric_limits<long>::max();
  std::vector<long> lo(n, 0), hi(n, kInf), ecc(n, -1);
  long diameter = 0;

  auto sweep_from = [&](NodeId v) {
    const auto dist = bfs_hops(g, v);
    long e = 0;
    for (long d : dist) {
      if (d < 0) throw InvalidInput("graph is disconnected");
      e = std::max(e, d);
    }
    ecc[v] = e;
    lo[v] = hi[v] = e;
    diameter = std::max(diameter, e);
    for (NodeId w = 0; w < n; ++w) {
      lo[w] = std::max(lo[w], std::max(dist[w], e - dist[w]));
      hi[w] = std::min(hi[w], e + dist[w]);
    }
    return dist;
  };

  // Alternate the most promising (largest upper bound) and the most central
  // (smallest lower bound) unresolved candidates until no node can beat the
  // best eccentricity seen.
  sweep_from(0);
  bool pick_high = true;
  for (;;) {
    std::optional<NodeId> best;
    for (NodeId w = 0; w < n; ++w) {
      if (ecc[w] >= 0 || hi[w] <= diameter) continue;
      if (!best || (pick_high ? hi[w] > hi[*best] : lo[w] < lo[*best])) best = w;
    }
    if (!best) break;
    sweep_from(*best);
    pick_high = !pick_high;
  }

  for (NodeId i = 0; i < n; ++i) {
    if (hi[i] < diameter || (ecc[i] >= 0 && ecc[i] != diameter)) continue;
    const auto dist = bfs_hops(g, i);
    const long e = *std::max_element(dist.begin(), dist.end());
    if (e != diameter) continue;
    for (NodeId j = 0; j < n; ++j)
      if (dist[j] == diameter) return {i, j, static_cast<double>(diameter)};
  }
  throw InvariantViolation("diametral pair search found no pair at the diameter");
}

inline HubPair diametral_pair_scan(const Graph& g, DistanceMetric metric) {
  HubPair best{0, 0, -1.0};
  for (NodeId i = 0; i < g.size(); ++i) {
    const Vector d = distances_from(g, i, metric);
    for (NodeId j = i + 1; j < g.size(); ++j) {
      if (d[j] == kUnreachable) throw InvalidInput("graph is disconnected");
      if (d[j] > best.distance) best = {i, j, d[j]};
    }
  }
  return best;
}

}  // namespace detail

// Hub pair of the bisection: two nodes at maximal geodesic distance, ties
// broken by the lexicographically smallest index pair.
inline HubPair diametral_pair(const Graph& g, DistanceMetric metric = DistanceMetric::kHops) {
  if (g.size() < 2) throw InvalidInput("graph too small: need at least 2 nodes");
  if (metric == DistanceMetric::kHops) return detail::diametral_pair_hops(g);
  return detail::diametral_pair_scan(g, metric);
}

struct BisectionOptions {
  DistanceMetric metric = DistanceMetric::kHops;
};

// Split of a connected node set into two connected pieces. `left` is
// S1 ∪ C1 ∪ … ∪ C_{m*} (the side of the second hub), `right` the rest.
struct Bisection {
  Piece left;
  Piece right;
  std::size_t boundary_component_size = 0;  // |C_{m*}|
  std::size_t balance_gap = 0;              // | |left| - |right| |
  HubPair hubs{};
  double median = 0.0;
  bool repaired = false;  // a disconnected fragment was moved across
  bool fallback = false;  // BFS-layer split replaced the median split
};

namespace detail {

struct MedianSplit {
  std::vector<char> in_left;
  std::size_t left_size = 0;
  std::size_t boundary_component_size = 0;
};

// Selection on the hub-distance difference at threshold p.
inline std::optional<MedianSplit> split_at(const Graph& g, const Vector& diff, double p) {
  const std::size_t n = g.size();
  const double tol = 1e-12 * std::max(1.0, std::abs(p));
  MedianSplit out;
  out.in_left.assign(n, 0);
  std::vector<char> boundary(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (diff[v] > p + tol) {
      out.in_left[v] = 1;
      ++out.left_size;
    } else if (std::abs(diff[v] - p) <= tol) {
      boundary[v] = 1;
    }
  }
  auto comps = component_lists(g, boundary);
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
  });
  if (comps.empty()) return std::nullopt;

  // Greedy prefix sizes q_m; the first m minimizing |2 q_m - n| wins.
  std::size_t q = out.left_size;
  std::size_t best_m = 0;
  std::size_t best_dev = std::numeric_limits<std::size_t>::max();
  for (std::size_t m = 0; m < comps.size(); ++m) {
    q += comps[m].size();
    const std::size_t dev = 2 * q > n ? 2 * q - n : n - 2 * q;
    if (dev < best_dev) {
      best_dev = dev;
      best_m = m;
    }
  }
  for (std::size_t m = 0; m <= best_m; ++m)
    for (NodeId v : comps[m]) {
      out.in_left[v] = 1;
      ++out.left_size;
    }
  out.boundary_component_size = comps[best_m].size();
  if (out.left_size == 0 || out.left_size == n) return std::nullopt;
  return out;
}

inline std::vector<NodeId> members(const std::vector<char>& mask, char value) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < mask.size(); ++v)
    if (mask[v] == value) out.push_back(v);
  return out;
}

inline bool side_connected(const Graph& g, const std::vector<char>& in_left, char side) {
  std::vector<char> mask(in_left.size());
  for (std::size_t v = 0; v < mask.size(); ++v) mask[v] = in_left[v] == side;
  return component_lists(g, mask).size() == 1;
}

// Moves the smallest fragments of a disconnected side across while the
// receiving side stays connected. Returns false if it stalls.
inline bool repair(const Graph& g, std::vector<char>& in_left) {
  for (std::size_t iter = 0; iter < g.size(); ++iter) {
    bool changed = false;
    for (char side : {char{1}, char{0}}) {
      std::vector<char> mask(in_left.size());
      for (std::size_t v = 0; v < mask.size(); ++v) mask[v] = in_left[v] == side;
      auto comps = component_lists(g, mask);
      if (comps.size() <= 1) continue;
      std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
      });
      auto trial = in_left;
      for (NodeId v : comps.front()) trial[v] = side ? 0 : 1;
      if (side_connected(g, trial, side ? 0 : 1)) {
        in_left = std::move(trial);
        changed = true;
        break;
      }
    }
    const bool ok = side_connected(g, in_left, 1) && side_connected(g, in_left, 0);
    if (ok) return true;
    if (!changed) return false;
  }
  return false;
}

// BFS-order prefix from `root` (always connected) whose size is closest to
// n/2 among those leaving a connected complement.
inline std::vector<char> layer_split(const Graph& g, NodeId root) {
  const std::size_t n = g.size();
  std::vector<NodeId> order;
  std::vector<char> seen(n, 0);
  order.push_back(root);
  seen[root] = 1;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (const Neighbor& nb : g.neighbors(order[h]))
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        order.push_back(nb.node);
      }
  std::vector<std::size_t> sizes;
  for (std::size_t k = 1; k < n; ++k) sizes.push_back(k);
  std::stable_sort(sizes.begin(), sizes.end(), [n](std::size_t a, std::size_t b) {
    const auto da = 2 * a > n ? 2 * a - n : n - 2 * a;
    const auto db = 2 * b > n ? 2 * b - n : n - 2 * b;
    return da < db;
  });
  for (std::size_t k : sizes) {
    std::vector<char> in_left(n, 1);
    for (std::size_t i = 0; i < k; ++i) in_left[order[i]] = 0;
    if (side_connected(g, in_left, 1)) return in_left;
  }
  throw InvariantViolation("no connected BFS-layer split exists");
}

}  // namespace detail

// Connectivity-guaranteed near-bisection of a connected graph with at least
// two nodes. Both median candidates of the hub-distance difference are
// tried; the smaller balance gap wins, ties to the lower median.
inline Bisection bisect(const Graph& g, const BisectionOptions& opts = {}) {
  const std::size_t n = g.size();
  if (n < 2) throw InvalidInput("graph too small: bisection needs at least 2 nodes");
  if (!is_connected(g)) throw InvalidInput("bisection needs a connected graph");

  const HubPair hubs = diametral_pair(g, opts.metric);
  const Vector di = distances_from(g, hubs.first, opts.metric);
  const Vector dj = distances_from(g, hubs.second, opts.metric);
  Vector diff(n);
  for (NodeId v = 0; v < n; ++v) diff[v] = di[v] - dj[v];
  Vector sorted = diff;
  std::sort(sorted.begin(), sorted.end());
  const double lower = sorted[(n - 1) / 2];
  const double upper = sorted[n / 2];

  std::optional<detail::MedianSplit> best;
  double best_p = lower;
  for (double p : {lower, upper}) {
    if (best && p == best_p) continue;
    auto split = detail::split_at(g, diff, p);
    if (!split) continue;
    const auto gap = [n](std::size_t left) { return left * 2 > n ? 2 * left - n : n - 2 * left; };
    if (!best || gap(split->left_size) < gap(best->left_size)) {
      best = std::move(split);
      best_p = p;
    }
  }

  Bisection out{Piece::trusted({0}), Piece::trusted({1})};
  out.hubs = hubs;
  out.median = best_p;
  std::vector<char> in_left;
  if (best) {
    in_left = std::move(best->in_left);
    out.boundary_component_size = best->boundary_component_size;
    if (!detail::side_connected(g, in_left, 1) || !detail::side_connected(g, in_left, 0)) {
      out.repaired = true;
      if (!detail::repair(g, in_left)) out.fallback = true;
    }
  } else {
    out.fallback = true;
  }
  if (out.fallback) in_left = detail::layer_split(g, hubs.first);

  out.left = Piece::trusted(detail::members(in_left, 1));
  out.right = Piece::trusted(detail::members(in_left, 0));
  const std::size_t l = out.left.size();
  const std::size_t r = out.right.size();
  out.balance_gap = l > r ? l - r : r - l;
  return out;
}

struct BisectionCertificate {
  bool left_connected = false;
  bool right_connected = false;
  bool covers = false;    // left ∪ right = V, left ∩ right = ∅
  std::size_t gap = 0;
  std::size_t bound = 0;  // 2 |C_{m*}|
  bool repaired = false;
  bool fallback = false;
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

// Checks every clause of a bisection against g.
inline BisectionCertificate verify_bisection(const Graph& g, const Bisection& b) {
  BisectionCertificate cert;
  cert.repaired = b.repaired;
  cert.fallback = b.fallback;
  std::vector<int> hits(g.size(), 0);
  bool in_range = true;
  for (const Piece* p : {&b.left, &b.right})
    for (NodeId v : p->nodes()) {
      if (v >= g.size()) {
        in_range = false;
        continue;
      }
      ++hits[v];
    }
  cert.covers = in_range && std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  if (!cert.covers) cert.violations.push_back("sides do not partition the node set");
  cert.left_connected = in_range && is_connected_subset(g, b.left.nodes());
  cert.right_connected = in_range && is_connected_subset(g, b.right.nodes());
  if (!cert.left_connected) cert.violations.push_back("left side is not connected");
  if (!cert.right_connected) cert.violations.push_back("right side is not connected");
  const std::size_t l = b.left.size();
  const std::size_t r = b.right.size();
  cert.gap = l > r ? l - r : r - l;
  cert.bound = 2 * b.boundary_component_size;
  if (cert.gap != b.balance_gap) cert.violations.push_back("recorded balance gap does not match the sides");
  if (cert.gap > cert.bound)
    cert.violations.push_back("balance gap " + std::to_string(cert.gap) + " exceeds 2|C_m*| = " +
                              std::to_string(cert.bound));
  return cert;
}

}  // namespace gwdict
