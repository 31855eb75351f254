#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwdict/error.hpp"
#include "gwdict/graph.hpp"
#include "gwdict/matrix.hpp"
#include "gwdict/multires.hpp"
#include "gwdict/parallel.hpp"
#include "gwdict/spectral.hpp"

namespace gwdict {

enum class DictionaryKind {
  kPiecewiseConstant,
  kPiecewiseSmooth,
  kFourier,  // global graph Fourier basis
  kDelta,    // Kronecker deltas
  kWavelet,  // Haar-like wavelet basis
};

inline std::string_view to_string(DictionaryKind k) {
  switch (k) {
    case DictionaryKind::kPiecewiseConstant: return "pc";
    case DictionaryKind::kPiecewiseSmooth: return "ps";
    case DictionaryKind::kFourier: return "gft";
    case DictionaryKind::kDelta: return "delta";
    case DictionaryKind::kWavelet: return "wavelet";
  }
  return "unknown";
}

// Provenance of one atom. `tree_node` is empty for atoms not tied to a
// partition tree (Fourier and delta bases).
struct AtomInfo {
  std::optional<std::size_t> tree_node;
  std::size_t level = 0;
  std::size_t spectral_index = 0;
};

// Ordered collection of unit-norm sparse atoms stored column-compressed.
class Dictionary {
 public:
  Dictionary(DictionaryKind kind, std::size_t bandwidth, CscMatrix atoms, std::vector<AtomInfo> info,
             std::shared_ptr<const PartitionTree> tree)
      : kind_(kind), bandwidth_(bandwidth), atoms_(std::move(atoms)), info_(std::move(info)), tree_(std::move(tree)) {
    if (info_.size() != atoms_.cols()) throw InvariantViolation("atom provenance does not match atom count");
  }

  DictionaryKind kind() const noexcept { return kind_; }
  std::size_t bandwidth() const noexcept { return bandwidth_; }
  std::size_t signal_size() const noexcept { return atoms_.rows(); }
  std::size_t atom_count() const noexcept { return atoms_.cols(); }
  const CscMatrix& atoms() const noexcept { return atoms_; }
  SparseColumn atom(std::size_t i) const { return atoms_.column(i); }
  const AtomInfo& info(std::size_t i) const { return info_.at(i); }
  const PartitionTree* tree() const noexcept { return tree_.get(); }

  // Orthonormal bases admit direct nonlinear approximation.
  bool orthonormal() const noexcept {
    return kind_ == DictionaryKind::kFourier || kind_ == DictionaryKind::kDelta || kind_ == DictionaryKind::kWavelet;
  }

 private:
  DictionaryKind kind_;
  std::size_t bandwidth_;
  CscMatrix atoms_;
  std::vector<AtomInfo> info_;
  std::shared_ptr<const PartitionTree> tree_;
};

// One atom 1_S/√|S| per tree piece, in tree order.
inline Dictionary build_pc_dict(std::shared_ptr<const PartitionTree> tree) {
  CscMatrix atoms(tree->graph_size());
  std::vector<AtomInfo> info;
  info.reserve(tree->size());
  for (std::size_t id = 0; id < tree->size(); ++id) {
    const TreeNode& t = tree->node(id);
    const Vector value(t.piece.size(), 1.0 / std::sqrt(static_cast<double>(t.piece.size())));
    atoms.push_column(t.piece.nodes(), value);
    info.push_back({id, t.level, 0});
  }
  return Dictionary(DictionaryKind::kPiecewiseConstant, 1, std::move(atoms), std::move(info), std::move(tree));
}

inline Dictionary build_pc_dict(const PartitionTree& tree) {
  return build_pc_dict(std::make_shared<const PartitionTree>(tree));
}

// Unnormalized indicators 1_S of every tree piece, for inspection.
inline CscMatrix raw_indicator_atoms(const PartitionTree& tree) {
  CscMatrix atoms(tree.graph_size());
  for (const TreeNode& t : tree.nodes()) atoms.push_column(t.piece.nodes(), Vector(t.piece.size(), 1.0));
  return atoms;
}

// Per tree piece, the first min(K, |piece|) Laplacian eigenvectors of the
// induced subgraph, zero-padded to N. Pieces are decomposed concurrently.
inline Dictionary build_ps_dict(const Graph& g, std::shared_ptr<const PartitionTree> tree, std::size_t bandwidth) {
  if (bandwidth < 1) throw InvalidInput("bandwidth must be at least 1");
  if (tree->graph_size() != g.size()) throw InvalidInput("partition tree does not belong to this graph");
  std::vector<FourierBasis> bases(tree->size());
  parallel_for(tree->size(), [&](std::size_t id) {
    const Piece& piece = tree->node(id).piece;
    bases[id] = gft(induced_subgraph(g, piece.nodes()), bandwidth);
  });
  CscMatrix atoms(g.size());
  std::vector<AtomInfo> info;
  Vector value;
  for (std::size_t id = 0; id < tree->size(); ++id) {
    const TreeNode& t = tree->node(id);
    const FourierBasis& fb = bases[id];
    for (std::size_t k = 0; k < fb.width(); ++k) {
      value.assign(t.piece.size(), 0.0);
      for (std::size_t i = 0; i < t.piece.size(); ++i) value[i] = fb.vectors(i, k);
      atoms.push_column(t.piece.nodes(), value);
      info.push_back({id, t.level, k});
    }
  }
  return Dictionary(DictionaryKind::kPiecewiseSmooth, bandwidth, std::move(atoms), std::move(info), std::move(tree));
}

inline Dictionary build_ps_dict(const Graph& g, const PartitionTree& tree, std::size_t bandwidth) {
  return build_ps_dict(g, std::make_shared<const PartitionTree>(tree), bandwidth);
}

// Full global graph Fourier basis.
inline Dictionary fourier_dictionary(const Graph& g) {
  const FourierBasis fb = gft(g, g.size());
  std::vector<AtomInfo> info(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) info[k].spectral_index = k;
  return Dictionary(DictionaryKind::kFourier, g.size(), CscMatrix::from_dense(fb.vectors), std::move(info), nullptr);
}

inline Dictionary delta_dictionary(std::size_t n) {
  return Dictionary(DictionaryKind::kDelta, 1, CscMatrix::identity(n), std::vector<AtomInfo>(n), nullptr);
}

inline Dictionary wavelet_dictionary(std::shared_ptr<const PartitionTree> tree) {
  WaveletBasis w(*tree);
  std::vector<AtomInfo> info;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const std::size_t id = w.column_node(k);
    info.push_back({id, tree->node(id).level, 0});
  }
  return Dictionary(DictionaryKind::kWavelet, 1, w.columns(), std::move(info), std::move(tree));
}

struct DictionaryStats {
  std::size_t atom_count = 0;
  std::size_t nnz = 0;
  double coherence = 0.0;  // max |<d_i, d_j>| over distinct atoms
};

inline DictionaryStats dict_stats(const Dictionary& d) {
  DictionaryStats s;
  s.atom_count = d.atom_count();
  s.nnz = d.atoms().nnz(1e-12);
  const CscMatrix& a = d.atoms();
  std::vector<std::vector<std::pair<std::size_t, double>>> by_row(a.rows());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const auto col = a.column(c);
    for (std::size_t k = 0; k < col.index.size(); ++k) by_row[col.index[k]].emplace_back(c, col.value[k]);
  }
  Vector acc(a.cols(), 0.0);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    const auto col = a.column(i);
    for (std::size_t k = 0; k < col.index.size(); ++k)
      for (const auto& [j, v] : by_row[col.index[k]]) {
        if (j <= i) continue;
        if (acc[j] == 0.0) touched.push_back(j);
        acc[j] += col.value[k] * v;
      }
    for (std::size_t j : touched) {
      s.coherence = std::max(s.coherence, std::abs(acc[j]));
      acc[j] = 0.0;
    }
    touched.clear();
  }
  return s;
}

// Partition-quality constant bounding the per-piece bandlimited
// approximation error of a globally K-bandlimited signal:
//   xᵀ(λ_K I − L_cut)x / (min_c λ^{(S_c)}_{K+1} ‖x‖²)
// λ_K is the K-th smallest global Laplacian eigenvalue and L_cut the
// Laplacian of edges joining different pieces.
inline double epsilon_par(const Graph& g, std::span<const Piece> pieces, std::span<const double> x,
                          std::size_t bandwidth) {
  if (x.size() != g.size()) throw InvalidInput("signal length does not match node count");
  if (bandwidth < 1 || bandwidth > g.size()) throw InvalidInput("bandwidth must lie in 1..N");
  const double energy = squared_norm(x);
  if (energy == 0.0) throw InvalidInput("epsilon_par of a zero signal is undefined");
  std::vector<long> label(g.size(), -1);
  for (std::size_t c = 0; c < pieces.size(); ++c) {
    for (NodeId v : pieces[c].nodes()) {
      if (v >= g.size() || label[v] >= 0) throw InvalidInput("pieces must partition the node set");
      label[v] = static_cast<long>(c);
    }
  }
  if (std::any_of(label.begin(), label.end(), [](long l) { return l < 0; }))
    throw InvalidInput("pieces must cover every node");

  double min_gap_value = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < pieces.size(); ++c) {
    if (pieces[c].size() <= bandwidth)
      throw InvalidInput("piece " + std::to_string(c) + " has " + std::to_string(pieces[c].size()) +
                         " nodes; epsilon_par needs every piece larger than the bandwidth " +
                         std::to_string(bandwidth));
    const Graph sub = induced_subgraph(g, pieces[c].nodes());
    if (!is_connected(sub)) throw InvalidInput("piece " + std::to_string(c) + " is not connected");
    const EigenPairs e = sym_eig(laplacian(sub));
    min_gap_value = std::min(min_gap_value, e.values[bandwidth]);
  }
  const double lambda_k = sym_eig(laplacian(g)).values[bandwidth - 1];
  double cut_variation = 0.0;
  for (const Edge& e : g.edges()) {
    if (label[e.u] == label[e.v]) continue;
    const double d = x[e.u] - x[e.v];
    cut_variation += e.weight * d * d;
  }
  return (lambda_k * energy - cut_variation) / (min_gap_value * energy);
}

}  // namespace gwdict
