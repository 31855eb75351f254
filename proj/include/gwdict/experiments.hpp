#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwdict/approx.hpp"
#include "gwdict/dictionary.hpp"
#include "gwdict/error.hpp"
#include "gwdict/multires.hpp"
#include "gwdict/signals.hpp"

namespace gwdict {

enum class Strategy { kBest, kNonlinear, kOmp };

inline Strategy parse_strategy(std::string_view s) {
  if (s == "best") return Strategy::kBest;
  if (s == "nla") return Strategy::kNonlinear;
  if (s == "omp") return Strategy::kOmp;
  throw InvalidInput("unknown strategy '" + std::string(s) + "' (expected best, nla or omp)");
}

struct CurvePoint {
  std::size_t budget = 0;
  double nmse = 0.0;
  double snr_db = 0.0;
  std::string method;  // "<dictionary>-<strategy>"
};

// Approximation error of x over D at every budget (ascending). OMP runs once
// at the largest budget; its greedy prefix gives every smaller budget, the
// error at step t being (‖r_t‖/‖x‖)². `best` keeps the lower NMSE per point.
inline std::vector<CurvePoint> approximation_curve(const Dictionary& d, std::span<const double> x,
                                                   std::vector<std::size_t> budgets, Strategy strategy) {
  if (budgets.empty()) throw InvalidInput("at least one budget is required");
  for (std::size_t b : budgets)
    if (b < 1) throw InvalidInput("budgets must be positive");
  std::sort(budgets.begin(), budgets.end());
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  const std::string prefix(to_string(d.kind()));

  std::optional<SparseCode> code;
  if (strategy != Strategy::kNonlinear) {
    OmpOptions opts;
    opts.max_atoms = budgets.back();
    opts.tol = 0.0;
    code = omp(d, x, opts);
  }
  const double xnorm = norm(x);
  std::vector<CurvePoint> out;
  for (std::size_t b : budgets) {
    std::optional<CurvePoint> best;
    if (code) {
      const std::size_t step = std::min(b, code->residual_history.size() - 1);
      const double ratio = code->residual_history[step] / xnorm;
      const double e = ratio * ratio;
      best = CurvePoint{b, e, e == 0.0 ? kSnrCapDb : std::min(kSnrCapDb, -10.0 * std::log10(e)), prefix + "-omp"};
    }
    if (strategy != Strategy::kOmp) {
      const Approximation a = nonlinear_approx(d, x, std::min(b, d.atom_count()));
      if (!best || a.report.nmse < best->nmse)
        best = CurvePoint{b, a.report.nmse, a.report.snr_db, prefix + "-nla"};
    }
    out.push_back(*best);
  }
  return out;
}

struct LocalizationPoint {
  double sigma = 0.0;  // noise standard deviation relative to ‖x‖∞
  double snr_in = 0.0;
  double snr_out = 0.0;
};

struct LocalizationOptions {
  std::vector<double> sigmas{0.05, 0.1, 0.2, 0.5};
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  bool arbitrary_pieces = false;
  std::optional<double> fixed_tol;  // replaces the discrepancy rule when set
};

// One-piece signal: the indicator of a connected piece of roughly N/16 to
// N/4 nodes, taken from the tree or grown at random.
inline Vector one_piece_signal(const Graph& g, const PartitionTree& tree, bool arbitrary, Rng& rng) {
  const std::size_t n = g.size();
  Vector x(n, 0.0);
  if (arbitrary) {
    const std::size_t count = std::max<std::size_t>(1, std::min<std::size_t>(n, 8));
    const Partition p = gen_arbitrary_pieces(g, count, rng);
    const auto pick = static_cast<std::size_t>(rng.integer(0, static_cast<long>(p.pieces.size()) - 1));
    for (NodeId v : p.pieces[pick].nodes()) x[v] = 1.0;
    return x;
  }
  const std::size_t lo = std::max<std::size_t>(1, n / 16);
  const std::size_t hi = std::max<std::size_t>(lo, n / 4);
  std::vector<std::size_t> candidates;
  for (std::size_t id = 1; id < tree.size(); ++id) {
    const std::size_t s = tree.node(id).piece.size();
    if (s >= lo && s <= hi) candidates.push_back(id);
  }
  if (candidates.empty()) candidates.push_back(0);
  const auto pick = candidates[static_cast<std::size_t>(rng.integer(0, static_cast<long>(candidates.size()) - 1))];
  for (NodeId v : tree.node(pick).piece.nodes()) x[v] = 1.0;
  return x;
}

// Denoising sweep. Each trial draws a one-piece signal x (‖x‖∞ = 1), adds
// N(0, σ²) noise and reconstructs with OMP stopped by the discrepancy rule
// ‖r‖ ≤ σ√N. SNRs in dB are averaged over trials.
inline std::vector<LocalizationPoint> localization_sweep(const Graph& g, const PartitionTree& tree,
                                                         const Dictionary& d, const LocalizationOptions& opts) {
  if (opts.trials < 1) throw InvalidInput("at least one trial is required");
  std::vector<LocalizationPoint> out;
  const Rng base(opts.seed);
  const double root_n = std::sqrt(static_cast<double>(g.size()));
  for (std::size_t s = 0; s < opts.sigmas.size(); ++s) {
    const double sigma = opts.sigmas[s];
    if (!(sigma >= 0.0)) throw InvalidInput("noise levels must be nonnegative");
    LocalizationPoint p{sigma, 0.0, 0.0};
    for (std::size_t t = 0; t < opts.trials; ++t) {
      Rng rng = base.split(t);  // same signals for every noise level
      const Vector x = one_piece_signal(g, tree, opts.arbitrary_pieces, rng);
      Rng noise = base.split(0x10000 + s * 0x1000 + t);
      const Vector y = add_noise(x, sigma, noise);
      OmpOptions omp_opts;
      omp_opts.tol = opts.fixed_tol ? *opts.fixed_tol : sigma * root_n / norm(y);
      const Approximation a = localize(d, y, omp_opts, std::span<const double>(x));
      p.snr_in += snr_db(y, x);
      p.snr_out += a.report.snr_db;
    }
    p.snr_in /= static_cast<double>(opts.trials);
    p.snr_out /= static_cast<double>(opts.trials);
    out.push_back(p);
  }
  return out;
}

}  // namespace gwdict
