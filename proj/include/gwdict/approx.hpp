#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gwdict/dictionary.hpp"
#include "gwdict/error.hpp"
#include "gwdict/graph.hpp"
#include "gwdict/matrix.hpp"
#include "gwdict/multires.hpp"

namespace gwdict {

// SNR reported for an exact reconstruction.
inline constexpr double kSnrCapDb = 300.0;

// Coefficients below this magnitude count as zero in ℓ₀ tallies.
inline constexpr double kZeroThreshold = 1e-10;

// ‖x̂ − x‖² / ‖x‖²
inline double nmse(std::span<const double> estimate, std::span<const double> reference) {
  if (estimate.size() != reference.size()) throw InvalidInput("nmse: length mismatch");
  const double ref = squared_norm(reference);
  if (ref == 0.0) throw InvalidInput("nmse: zero reference signal");
  double err = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = estimate[i] - reference[i];
    err += d * d;
  }
  return err / ref;
}

// 10 log10(‖x‖² / ‖x̂ − x‖²), capped at kSnrCapDb.
inline double snr_db(std::span<const double> estimate, std::span<const double> reference) {
  const double e = nmse(estimate, reference);
  if (e == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, -10.0 * std::log10(e));
}

inline std::size_t count_nonzero(std::span<const double> a, double threshold = kZeroThreshold) {
  return static_cast<std::size_t>(std::count_if(a.begin(), a.end(), [&](double v) { return std::abs(v) > threshold; }));
}

struct ApproxReport {
  std::string method;
  std::size_t budget = 0;
  double nmse = 0.0;
  double snr_db = 0.0;
};

struct Approximation {
  Vector signal;
  ApproxReport report;
};

struct SparseCode {
  std::vector<std::size_t> support;
  Vector coefficients;
  double residual_norm = 0.0;
  std::size_t iterations = 0;
  Vector residual_history;  // ‖r_t‖ for t = 0..iterations
};

namespace detail {

// Incremental QR of a growing set of atoms (modified Gram-Schmidt with one
// reorthogonalization pass).
class IncrementalQr {
 public:
  explicit IncrementalQr(std::size_t n) : n_(n) {}

  // Appends `atom` unless it is numerically dependent on the current set.
  bool append(const SparseColumn& atom) {
    Vector v = atom.dense(n_);
    const double original = norm(v);
    if (original == 0.0) return false;
    Vector r(q_.size() + 1, 0.0);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < q_.size(); ++i) {
        const double c = dot(q_[i], v);
        r[i] += c;
        for (std::size_t k = 0; k < n_; ++k) v[k] -= c * q_[i][k];
      }
    }
    const double rest = norm(v);
    if (rest <= 1e-10 * original) return false;
    for (double& x : v) x /= rest;
    r.back() = rest;
    q_.push_back(std::move(v));
    r_.push_back(std::move(r));
    return true;
  }

  std::size_t size() const noexcept { return q_.size(); }
  std::span<const double> q(std::size_t i) const { return q_[i]; }

  // Solves R a = Qᵀx.
  Vector solve(std::span<const double> x) const {
    const std::size_t k = q_.size();
    Vector z(k);
    for (std::size_t i = 0; i < k; ++i) z[i] = dot(q_[i], x);
    Vector a(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
      double s = z[i];
      for (std::size_t j = i + 1; j < k; ++j) s -= r_[j][i] * a[j];
      a[i] = s / r_[i][i];
    }
    return a;
  }

 private:
  std::size_t n_;
  std::vector<Vector> q_;
  std::vector<Vector> r_;  // r_[j] is column j of R
};

inline void check_signal(const Dictionary& d, std::span<const double> x) {
  if (x.size() != d.signal_size()) throw InvalidInput("signal length does not match the dictionary");
}

}  // namespace detail

// x̂ = D_S a for a code over dictionary D.
inline Vector reconstruct(const Dictionary& d, const SparseCode& code) {
  Vector out(d.signal_size(), 0.0);
  for (std::size_t k = 0; k < code.support.size(); ++k) d.atom(code.support[k]).scatter(out, code.coefficients[k]);
  return out;
}

struct OmpOptions {
  std::size_t max_atoms = std::numeric_limits<std::size_t>::max();
  double tol = 1e-9;  // stop once ‖r‖ / ‖x‖ <= tol
};

// Orthogonal matching pursuit. Each step picks the atom with the largest
// |<r, d>| (ties to the lower index), refits all coefficients by least
// squares and updates the residual. Atoms dependent on the selected set are
// skipped in favour of the next best.
inline SparseCode omp(const Dictionary& d, std::span<const double> x, const OmpOptions& opts = {}) {
  detail::check_signal(d, x);
  if (opts.max_atoms < 1) throw InvalidInput("omp: max_atoms must be at least 1");
  const double xnorm = norm(x);
  if (xnorm == 0.0) throw InvalidInput("omp: zero signal");

  const std::size_t n = x.size();
  detail::IncrementalQr qr(n);
  Vector r(x.begin(), x.end());
  std::vector<char> unusable(d.atom_count(), 0);
  SparseCode code;
  code.residual_history.push_back(xnorm);

  while (code.support.size() < opts.max_atoms && norm(r) > opts.tol * xnorm) {
    const Vector corr = d.atoms().transpose_times(r);
    std::optional<std::size_t> chosen;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < corr.size(); ++i) {
        if (unusable[i]) continue;
        if (!best || std::abs(corr[i]) > std::abs(corr[*best])) best = i;
      }
      if (!best || std::abs(corr[*best]) <= 1e-14 * xnorm) break;
      unusable[*best] = 1;
      if (qr.append(d.atom(*best))) {
        chosen = best;
        break;
      }
    }
    if (!chosen) break;
    code.support.push_back(*chosen);
    const auto q = qr.q(qr.size() - 1);
    const double c = dot(q, r);
    for (std::size_t k = 0; k < n; ++k) r[k] -= c * q[k];
    code.residual_history.push_back(norm(r));
  }
  code.iterations = code.support.size();
  code.coefficients = qr.solve(x);
  code.residual_norm = norm(r);
  return code;
}

// Least-squares fit of x on the listed atoms; dependent atoms get zero.
inline Vector project_onto(const Dictionary& d, std::span<const std::size_t> atoms, std::span<const double> x) {
  detail::IncrementalQr qr(d.signal_size());
  std::vector<std::size_t> kept;
  for (std::size_t i : atoms)
    if (qr.append(d.atom(i))) kept.push_back(i);
  const Vector a = qr.solve(x);
  Vector out(d.signal_size(), 0.0);
  for (std::size_t k = 0; k < kept.size(); ++k) d.atom(kept[k]).scatter(out, a[k]);
  return out;
}

// Keeps the m largest-magnitude analysis coefficients (ties to the lower
// index). In an orthonormal basis this is the best m-term approximation;
// for a redundant dictionary the chosen atoms are refit by least squares.
inline Approximation nonlinear_approx(const Dictionary& d, std::span<const double> x, std::size_t m) {
  detail::check_signal(d, x);
  if (m < 1 || m > d.atom_count()) throw InvalidInput("nonlinear_approx: budget out of range");
  const Vector a = d.atoms().transpose_times(x);
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return std::abs(a[i]) > std::abs(a[j]); });
  order.resize(m);
  Approximation out;
  if (d.orthonormal()) {
    out.signal.assign(x.size(), 0.0);
    for (std::size_t i : order) d.atom(i).scatter(out.signal, a[i]);
  } else {
    std::sort(order.begin(), order.end());
    out.signal = project_onto(d, order, x);
  }
  out.report = {"nla", m, nmse(out.signal, x), snr_db(out.signal, x)};
  return out;
}

inline Approximation nonlinear_approx(const WaveletBasis& w, std::span<const double> x, std::size_t m) {
  if (x.size() != w.size()) throw InvalidInput("signal length does not match the basis");
  if (m < 1 || m > w.size()) throw InvalidInput("nonlinear_approx: budget out of range");
  const Vector a = analyze(w, x);
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return std::abs(a[i]) > std::abs(a[j]); });
  Vector kept(a.size(), 0.0);
  for (std::size_t k = 0; k < m; ++k) kept[order[k]] = a[order[k]];
  Approximation out;
  out.signal = synthesize(w, kept);
  out.report = {"nla", m, nmse(out.signal, x), snr_db(out.signal, x)};
  return out;
}

// OMP reconstruction of a noisy signal; the report compares against
// `truth` when given, otherwise against y itself.
inline Approximation localize(const Dictionary& d, std::span<const double> y, const OmpOptions& opts,
                              std::optional<std::span<const double>> truth = std::nullopt) {
  detail::check_signal(d, y);
  Approximation out;
  const SparseCode code = omp(d, y, opts);
  out.signal = reconstruct(d, code);
  out.report.budget = code.support.size();
  const auto ref = truth ? *truth : y;
  out.report.method = "omp";
  out.report.nmse = nmse(out.signal, ref);
  out.report.snr_db = snr_db(out.signal, ref);
  return out;
}

// 1 + ‖Δx‖₀·L
inline std::size_t pc_sparsity_bound(const Graph& g, const PartitionTree& tree, std::span<const double> x) {
  return 1 + cut_count(g, x) * tree.depth();
}

// 1 + 2K‖Δx_PC‖₀·L
inline std::size_t ps_sparsity_bound(const Graph& g, const PartitionTree& tree, std::span<const double> x_pc,
                                     std::size_t bandwidth) {
  return 1 + 2 * bandwidth * cut_count(g, x_pc) * tree.depth();
}

}  // namespace gwdict
