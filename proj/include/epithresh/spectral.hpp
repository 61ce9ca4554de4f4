#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "epithresh/graph.hpp"
#include "epithresh/rng.hpp"

namespace epithresh {

class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
using SparseAdjacency = Eigen::SparseMatrix<Scalar, Eigen::RowMajor, std::int64_t>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct SpectralResultT {
  Scalar value{0};
  std::uint64_t iterations = 0;
  Scalar residual{0};  // final relative change, or the larger extrapolated remaining error
  bool converged = false;
};
using SpectralResult = SpectralResultT<double>;

template <typename Scalar>
struct SpectralGapT {
  Scalar lambda2{0};
  Scalar gap{0};
  std::uint64_t iterations = 0;
  bool converged = false;
};
using SpectralGap = SpectralGapT<double>;

struct PowerOptions {
  double tol = 1e-10;
  std::uint64_t max_iters = 100000;
  std::uint64_t seed = 0;
};

/// Adjacency matrix as an Eigen row-major sparse matrix.
template <typename Scalar = double>
SparseAdjacency<Scalar> adjacency_matrix(const Graph& g) {
  const auto n = static_cast<std::int64_t>(g.node_count());
  SparseAdjacency<Scalar> A(n, n);
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> per_row(n);
  for (std::int64_t v = 0; v < n; ++v) per_row[v] = static_cast<std::int64_t>(g.degree(v));
  A.reserve(per_row);
  for (std::int64_t v = 0; v < n; ++v) {
    for (NodeId w : g.neighbors(static_cast<NodeId>(v))) A.insert(v, w) = Scalar(1);
  }
  A.makeCompressed();
  return A;
}

/// Random start vector with entries in (0, 1), unit norm.
template <typename Scalar>
Vector<Scalar> positive_start_vector(Eigen::Index n, std::uint64_t seed) {
  Engine eng = make_engine(seed, 0x5bec);
  Vector<Scalar> x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = Scalar(uniform_open(eng));
  x.normalize();
  return x;
}

/// Power iteration on a symmetric operator `apply(x, y)` computing y = Op x,
/// with optional projection applied after each step. The estimate is the
/// Rayleigh quotient of the unit-norm iterate. Stops when both the relative
/// change and its geometric extrapolation fall below tol.
template <typename Scalar, typename Apply, typename Project>
SpectralResultT<Scalar> power_iteration(Vector<Scalar> x, Apply&& apply, Project&& project,
                                        const PowerOptions& opt) {
  SpectralResultT<Scalar> res;
  Vector<Scalar> y(x.size());
  Scalar prev = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar prev_change{0};
  project(x);
  x.normalize();
  for (std::uint64_t it = 1; it <= opt.max_iters; ++it) {
    apply(x, y);
    const Scalar theta = x.dot(y);
    res.value = theta;
    res.iterations = it;
    if (!std::isnan(prev)) {
      const Scalar scale = std::max(std::abs(theta), Scalar(std::numeric_limits<Scalar>::min()));
      const Scalar change = std::abs(theta - prev) / scale;
      // Geometric tail: with contraction rho the remaining error is about
      // change * rho / (1 - rho), which dwarfs the last change when rho -> 1.
      Scalar tail = std::numeric_limits<Scalar>::infinity();
      const Scalar rho = prev_change > Scalar(0) ? change / prev_change : Scalar(1);
      if (rho < Scalar(1)) tail = change * rho / (Scalar(1) - rho);
      prev_change = change;
      res.residual = std::max(change, std::min(tail, std::numeric_limits<Scalar>::max()));
      const bool at_noise = change <= Scalar(4) * std::numeric_limits<Scalar>::epsilon();
      if (change < Scalar(opt.tol) && (tail < Scalar(opt.tol) || at_noise)) {
        res.residual = std::min(res.residual, Scalar(opt.tol));
        res.converged = true;
        return res;
      }
    }
    prev = theta;
    project(y);
    const Scalar norm = y.norm();
    if (norm == Scalar(0)) {
      // Iterate annihilated: the operator is zero on the projected subspace.
      res.value = Scalar(0);
      res.residual = Scalar(0);
      res.converged = true;
      return res;
    }
    x = y / norm;
  }
  return res;
}

/// Largest adjacency eigenvalue via power iteration on A + I (the shift keeps
/// bipartite graphs, whose spectrum is symmetric, from oscillating).
template <typename Scalar = double>
SpectralResultT<Scalar> spectral_radius(const Graph& g, const PowerOptions& opt = {}) {
  if (g.node_count() == 0 || g.edge_count() == 0) {
    throw SpectralError("spectral_radius: graph needs at least one edge");
  }
  const SparseAdjacency<Scalar> A = adjacency_matrix<Scalar>(g);
  auto apply = [&A](const Vector<Scalar>& x, Vector<Scalar>& y) { y.noalias() = A * x + x; };
  auto res = power_iteration<Scalar>(positive_start_vector<Scalar>(A.rows(), opt.seed), apply,
                                     [](Vector<Scalar>&) {}, opt);
  res.value -= Scalar(1);
  return res;
}

/// Second-largest eigenvalue of M = D^{-1/2} A D^{-1/2} (same spectrum as the
/// walk matrix D^{-1} A). Iterates (M + I) / 2 with the known top eigenvector
/// D^{1/2} 1 projected out, so the result is the algebraic, not absolute, second.
template <typename Scalar = double>
SpectralGapT<Scalar> spectral_gap(const Graph& g, const PowerOptions& opt = {}) {
  const std::size_t n = g.node_count();
  if (n < 2) throw SpectralError("spectral_gap: need at least two nodes");
  if (!is_connected(g)) {
    throw SpectralError("spectral_gap: graph is disconnected (top eigenvalue is not simple)");
  }
  const auto N = static_cast<Eigen::Index>(n);
  Vector<Scalar> inv_sqrt_deg(N);
  Vector<Scalar> top(N);
  for (Eigen::Index v = 0; v < N; ++v) {
    const auto d = Scalar(g.degree(static_cast<NodeId>(v)));
    inv_sqrt_deg[v] = Scalar(1) / std::sqrt(d);
    top[v] = std::sqrt(d);
  }
  top.normalize();
  const SparseAdjacency<Scalar> A = adjacency_matrix<Scalar>(g);
  Vector<Scalar> scratch(N);
  auto apply = [&](const Vector<Scalar>& x, Vector<Scalar>& y) {
    scratch = inv_sqrt_deg.cwiseProduct(x);
    y.noalias() = A * scratch;
    y = Scalar(0.5) * (inv_sqrt_deg.cwiseProduct(y) + x);
  };
  auto project = [&top](Vector<Scalar>& x) { x -= top.dot(x) * top; };

  // A positive start is nearly parallel to the top eigenvector; use signed entries.
  Vector<Scalar> x = positive_start_vector<Scalar>(N, opt.seed);
  x.array() -= x.mean();
  auto res = power_iteration<Scalar>(std::move(x), apply, project, opt);

  SpectralGapT<Scalar> out;
  out.lambda2 = std::clamp(Scalar(2) * res.value - Scalar(1), Scalar(-1), Scalar(1));
  out.gap = Scalar(1) - out.lambda2;
  out.iterations = res.iterations;
  out.converged = res.converged;
  return out;
}

/// Walk stationary distribution pi_v = d_v / sum(d).
using DistributionVector = Eigen::VectorXd;
DistributionVector stationary_distribution(const Graph& g);

/// One step of the simple random walk on a distribution: (q Q)_v = sum_{u~v} q_u / d_u.
DistributionVector walk_step(const Graph& g, const DistributionVector& q);

struct MixingOptions {
  /// Default n^{-2}; a negative value selects the default.
  double threshold = -1.0;
  std::uint64_t max_steps = 1000000;
  std::size_t max_nodes = 5000;
};

/// Smallest t with ||q_t - pi||_1 <= threshold, q_0 the point mass at start.
std::uint64_t tv_mixing_time(const Graph& g, NodeId start, const MixingOptions& opt = {});

}  // namespace epithresh
