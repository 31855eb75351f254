#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <span>
#include <vector>

#include "gwdict/error.hpp"
#include "gwdict/graph.hpp"
#include "gwdict/matrix.hpp"

namespace gwdict {

// Eigen-decomposition of a real symmetric matrix: values ascending,
// vectors(:, i) paired with values[i].
struct EigenPairs {
  Vector values;
  Matrix vectors;
  int sweeps = 0;
};

struct JacobiOptions {
  double relative_tolerance = 1e-12;  // stop when off(A) <= tol * ‖M‖_F
  int max_sweeps = 100;
};

namespace detail {

// Flips v so its first component with |v_i| > tol is positive.
inline void fix_sign(std::span<double> v, double tol = 1e-9) {
  for (double x : v) {
    if (std::abs(x) > tol) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

}  // namespace detail

// Cyclic Jacobi eigensolver. Each sweep visits every (p, q) pair once in
// round-robin tournament order: a round holds n/2 disjoint pairs whose
// rotations commute, so they are applied to whole rows at a time. Entries
// already below tol/n are left alone; they cannot keep off(A) above tol.
inline EigenPairs sym_eig(const Matrix& m, const JacobiOptions& opts = {}) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidInput("eigendecomposition needs a square matrix");
  const double scale = std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale)
        throw InvalidInput("matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");

  Matrix a = m;
  Matrix vt = Matrix::identity(n);
  const double threshold = opts.relative_tolerance * m.frobenius_norm();
  const double negligible = n > 0 ? threshold / static_cast<double>(n) : 0.0;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };

  struct Rotation {
    std::size_t p, q;
    double c, s, t, app, aqq, apq;
  };
  // Circle-method schedule; slot value n is a bye when n is odd.
  const std::size_t players = n + (n % 2);
  std::vector<std::size_t> seat(players);
  std::iota(seat.begin(), seat.end(), 0);
  std::vector<Rotation> round;
  round.reserve(players / 2);

  int sweep = 0;
  for (;; ++sweep) {
    if (off_norm() <= threshold) break;
    if (sweep == opts.max_sweeps)
      throw NumericalFailure("Jacobi eigensolver did not converge in " + std::to_string(opts.max_sweeps) +
                             " sweeps");
    for (std::size_t r = 0; r + 1 < players; ++r) {
      round.clear();
      for (std::size_t i = 0; i < players / 2; ++i) {
        std::size_t p = seat[i];
        std::size_t q = seat[players - 1 - i];
        if (p >= n || q >= n) continue;
        if (p > q) std::swap(p, q);
        const double apq = a(p, q);
        if (std::abs(apq) <= negligible) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        round.push_back({p, q, c, t * c, t, app, aqq, apq});
      }
      std::rotate(seat.begin() + 1, seat.end() - 1, seat.end());
      if (round.empty()) continue;

      for (const Rotation& rot : round) {
        auto rp = a.row(rot.p);
        auto rq = a.row(rot.q);
        auto vp = vt.row(rot.p);
        auto vq = vt.row(rot.q);
        for (std::size_t k = 0; k < n; ++k) {
          const double xp = rp[k];
          const double xq = rq[k];
          rp[k] = rot.c * xp - rot.s * xq;
          rq[k] = rot.s * xp + rot.c * xq;
          const double yp = vp[k];
          const double yq = vq[k];
          vp[k] = rot.c * yp - rot.s * yq;
          vq[k] = rot.s * yp + rot.c * yq;
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        auto row = a.row(k);
        for (const Rotation& rot : round) {
          const double xp = row[rot.p];
          const double xq = row[rot.q];
          row[rot.p] = rot.c * xp - rot.s * xq;
          row[rot.q] = rot.s * xp + rot.c * xq;
        }
      }
      for (const Rotation& rot : round) {
        // The rotated 2x2 block is diagonal by construction.
        a(rot.p, rot.p) = rot.app - rot.t * rot.apq;
        a(rot.q, rot.q) = rot.aqq + rot.t * rot.apq;
        a(rot.p, rot.q) = a(rot.q, rot.p) = 0.0;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) detail::fix_sign(vt.row(i));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  // Degenerate clusters: lexicographic order of the sign-fixed vectors.
  const double cluster_tol = 1e-10 * scale;
  for (std::size_t b = 0; b < n;) {
    std::size_t e = b + 1;
    while (e < n && a(order[e], order[e]) - a(order[e - 1], order[e - 1]) <= cluster_tol) ++e;
    if (e - b > 1) {
      std::sort(order.begin() + static_cast<std::ptrdiff_t>(b), order.begin() + static_cast<std::ptrdiff_t>(e),
                [&](std::size_t i, std::size_t j) {
                  const auto vi = vt.row(i);
                  const auto vj = vt.row(j);
                  return std::lexicographical_compare(vi.begin(), vi.end(), vj.begin(), vj.end());
                });
    }
    b = e;
  }

  EigenPairs out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    const auto src = vt.row(order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = src[i];
  }
  return out;
}

// Graph Fourier basis of a connected (sub)graph truncated to `width` columns.
struct FourierBasis {
  Vector values;   // all Laplacian eigenvalues, ascending
  Matrix vectors;  // n x width, orthonormal columns
  std::size_t width() const noexcept { return vectors.cols(); }
};

// First min(K, n) Laplacian eigenvectors of a connected graph. Column 0 is
// set to the exact constant vector 1/√n.
inline FourierBasis gft(const Graph& g, std::size_t bandwidth) {
  if (bandwidth < 1) throw InvalidInput("bandwidth must be at least 1");
  if (!is_connected(g)) throw InvalidInput("graph Fourier basis of a piece needs a connected subgraph");
  const std::size_t n = g.size();
  const std::size_t width = std::min(bandwidth, n);
  FourierBasis fb;
  if (n == 1) {
    fb.values = {0.0};
    fb.vectors = Matrix(1, 1, 1.0);
    return fb;
  }
  EigenPairs eig = sym_eig(laplacian(g));
  fb.values = std::move(eig.values);
  fb.vectors = Matrix(n, width);
  const double c = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    fb.vectors(i, 0) = c;
    for (std::size_t k = 1; k < width; ++k) fb.vectors(i, k) = eig.vectors(i, k);
  }
  return fb;
}

// ‖V_(K)ᵀx‖² / ‖x‖²
inline double spectral_energy_ratio(const Graph& g, std::span<const double> x, std::size_t bandwidth) {
  if (x.size() != g.size()) throw InvalidInput("signal length does not match node count");
  const double energy = squared_norm(x);
  if (energy == 0.0) throw InvalidInput("spectral energy ratio of a zero signal is undefined");
  const FourierBasis fb = gft(g, bandwidth);
  double kept = 0.0;
  for (std::size_t k = 0; k < fb.width(); ++k) {
    double c = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) c += fb.vectors(i, k) * x[i];
    kept += c * c;
  }
  return kept / energy;
}

// CSV dump: first row eigenvalues, then one row per node holding that
// node's entry in every eigenvector.
inline void write_eigenpairs_csv(std::ostream& os, const EigenPairs& e) {
  os.precision(17);
  for (std::size_t k = 0; k < e.values.size(); ++k) os << (k ? "," : "") << e.values[k];
  os << '\n';
  for (std::size_t i = 0; i < e.vectors.rows(); ++i) {
    for (std::size_t k = 0; k < e.vectors.cols(); ++k) os << (k ? "," : "") << e.vectors(i, k);
    os << '\n';
  }
}

}  // namespace gwdict
