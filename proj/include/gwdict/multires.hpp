#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gwdict/error.hpp"
#include "gwdict/graph.hpp"
#include "gwdict/matrix.hpp"
#include "gwdict/parallel.hpp"
#include "gwdict/partition.hpp"

namespace gwdict {

struct TreeNode {
  Piece piece;
  std::size_t level = 0;
  std::optional<std::size_t> parent{};
  std::optional<std::size_t> left{};
  std::optional<std::size_t> right{};
  // Bisection bookkeeping for internal nodes.
  std::size_t boundary_component_size = 0;
  bool repaired = false;
  bool fallback = false;

  bool is_leaf() const noexcept { return !left; }
};

// Coarse-to-fine binary tree of pieces. Nodes are stored breadth first: by
// level, then by smallest node index of the piece. Node 0 is the root.
class PartitionTree {
 public:
  std::size_t graph_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t depth() const noexcept { return depth_; }
  const TreeNode& node(std::size_t id) const { return nodes_.at(id); }
  std::span<const TreeNode> nodes() const noexcept { return nodes_; }

  std::size_t repair_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& t) {
      return t.repaired;
    }));
  }

 private:
  friend PartitionTree decompose(const Graph&, const BisectionOptions&);
  std::size_t n_ = 0;
  std::size_t depth_ = 0;
  std::vector<TreeNode> nodes_;
};

// Recursively bisects every piece with two or more nodes until all leaves
// are singletons. Pieces of one level are bisected concurrently; each
// bisection is deterministic so the tree does not depend on scheduling.
inline PartitionTree decompose(const Graph& g, const BisectionOptions& opts = {}) {
  if (g.size() == 0) throw InvalidInput("cannot decompose an empty graph");
  if (!is_connected(g)) throw InvalidInput("decomposition needs a connected graph");

  std::vector<NodeId> all(g.size());
  for (NodeId v = 0; v < g.size(); ++v) all[v] = v;

  PartitionTree tree;
  tree.n_ = g.size();
  tree.nodes_.push_back(TreeNode{.piece = Piece::trusted(all)});

  struct Pending {
    std::size_t id;
    Graph local;
  };
  std::vector<Pending> frontier;
  frontier.push_back({0, g});

  for (std::size_t level = 0; !frontier.empty(); ++level) {
    std::vector<std::optional<Bisection>> splits(frontier.size());
    parallel_for(frontier.size(), [&](std::size_t i) {
      if (frontier[i].local.size() >= 2) splits[i] = bisect(frontier[i].local, opts);
    });

    struct Child {
      Piece piece;
      Graph local;
      std::size_t parent;
      bool is_left;
    };
    std::vector<Child> children;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      if (!splits[i]) continue;
      const Bisection& b = *splits[i];
      TreeNode& parent = tree.nodes_[frontier[i].id];
      parent.boundary_component_size = b.boundary_component_size;
      parent.repaired = b.repaired;
      parent.fallback = b.fallback;
      const auto parent_nodes = parent.piece.nodes();
      for (const auto& [side, is_left] : {std::pair{&b.left, true}, std::pair{&b.right, false}}) {
        std::vector<NodeId> global;
        global.reserve(side->size());
        for (NodeId local : side->nodes()) global.push_back(parent_nodes[local]);
        children.push_back(
            {Piece::trusted(std::move(global)), induced_subgraph(frontier[i].local, side->nodes()), frontier[i].id,
             is_left});
      }
    }
    std::sort(children.begin(), children.end(),
              [](const Child& a, const Child& b) { return a.piece.front() < b.piece.front(); });

    std::vector<Pending> next;
    for (Child& c : children) {
      const std::size_t id = tree.nodes_.size();
      TreeNode node{.piece = std::move(c.piece)};
      node.level = level + 1;
      node.parent = c.parent;
      tree.nodes_.push_back(std::move(node));
      (c.is_left ? tree.nodes_[c.parent].left : tree.nodes_[c.parent].right) = id;
      next.push_back({id, std::move(c.local)});
    }
    if (!next.empty()) tree.depth_ = level + 1;
    frontier = std::move(next);
  }
  return tree;
}

namespace detail {

// Sparse √(|S1||S2|/(|S1|+|S2|)) (1_{S1}/|S1| + sign·1_{S2}/|S2|).
inline std::pair<std::vector<std::size_t>, Vector> haar_column(std::span<const NodeId> s1,
                                                                std::span<const NodeId> s2, double sign) {
  if (s1.empty() || s2.empty()) throw InvalidInput("Haar templates need two nonempty pieces");
  const double a = static_cast<double>(s1.size());
  const double b = static_cast<double>(s2.size());
  const double scale = std::sqrt(a * b / (a + b));
  std::vector<std::pair<std::size_t, double>> entries;
  entries.reserve(s1.size() + s2.size());
  for (NodeId v : s1) entries.emplace_back(v, scale / a);
  for (NodeId v : s2) entries.emplace_back(v, sign * scale / b);
  std::sort(entries.begin(), entries.end());
  for (std::size_t k = 1; k < entries.size(); ++k)
    if (entries[k].first == entries[k - 1].first) throw InvalidInput("Haar templates need disjoint pieces");
  std::pair<std::vector<std::size_t>, Vector> out;
  for (const auto& [i, v] : entries) {
    out.first.push_back(i);
    out.second.push_back(v);
  }
  return out;
}

inline Vector densify(const std::pair<std::vector<std::size_t>, Vector>& col, std::size_t n) {
  Vector v(n, 0.0);
  for (std::size_t k = 0; k < col.first.size(); ++k) {
    if (col.first[k] >= n) throw InvalidInput("piece node out of range");
    v[col.first[k]] = col.second[k];
  }
  return v;
}

}  // namespace detail

// g(S1, S2): unit-norm lowpass vector.
inline Vector lowpass_template(const Piece& s1, const Piece& s2, std::size_t n) {
  return detail::densify(detail::haar_column(s1.nodes(), s2.nodes(), 1.0), n);
}

// h(S1, S2): unit-norm highpass vector, positive on S1, zero sum.
inline Vector highpass_template(const Piece& s1, const Piece& s2, std::size_t n) {
  return detail::densify(detail::haar_column(s1.nodes(), s2.nodes(), -1.0), n);
}

// Haar-like orthonormal basis: the scaling vector 1/√N followed by one
// highpass column per internal tree node, in tree order. Each highpass
// column is positive on the child holding the smaller node index.
class WaveletBasis {
 public:
  explicit WaveletBasis(const PartitionTree& tree) : columns_(tree.graph_size()) {
    const std::size_t n = tree.graph_size();
    const auto& root = tree.node(0).piece;
    std::vector<std::size_t> idx(root.nodes().begin(), root.nodes().end());
    columns_.push_column(idx, Vector(n, 1.0 / std::sqrt(static_cast<double>(n))));
    column_node_.push_back(0);
    for (std::size_t id = 0; id < tree.size(); ++id) {
      const TreeNode& t = tree.node(id);
      if (t.is_leaf()) continue;
      const std::size_t first = std::min(*t.left, *t.right);
      const std::size_t second = std::max(*t.left, *t.right);
      const auto col = detail::haar_column(tree.node(first).piece.nodes(), tree.node(second).piece.nodes(), -1.0);
      columns_.push_column(col.first, col.second);
      column_node_.push_back(id);
    }
  }

  std::size_t size() const noexcept { return columns_.rows(); }
  const CscMatrix& columns() const noexcept { return columns_; }
  // Tree node whose split produced column k (the root for column 0).
  std::size_t column_node(std::size_t k) const { return column_node_.at(k); }

 private:
  CscMatrix columns_;
  std::vector<std::size_t> column_node_;
};

inline WaveletBasis wavelet_basis(const PartitionTree& tree) { return WaveletBasis(tree); }

// Wᵀx
inline Vector analyze(const WaveletBasis& w, std::span<const double> x) {
  return w.columns().transpose_times(x);
}

// Wa
inline Vector synthesize(const WaveletBasis& w, std::span<const double> a) { return w.columns().times(a); }

}  // namespace gwdict
