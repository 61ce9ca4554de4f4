#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "epithresh/graph.hpp"

namespace testsupport {

using epithresh::Edge;
using epithresh::Graph;
using epithresh::NodeId;

inline Graph from_edges(const std::vector<Edge>& e, std::size_t n) {
  return epithresh::build_graph(e, n).graph;
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.push_back({i, j});
  return from_edges(e, n);
}

// Center 0, leaves 1..n-1.
inline Graph star(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 1; i < n; ++i) e.push_back({0, i});
  return from_edges(e, n);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.push_back({i, static_cast<NodeId>((i + 1) % n)});
  return from_edges(e, n);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return from_edges(e, n);
}

// G(n, p) drawn with std::mt19937 so it shares nothing with the library RNG.
inline Graph gnp(std::size_t n, double p, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (coin(rng)) e.push_back({i, j});
  return from_edges(e, n);
}

// G(n, p) plus a random spanning tree, so the result is connected.
inline Graph connected_gnp(std::size_t n, double p, std::uint32_t seed) {
  std::mt19937 rng(seed ^ 0x9e3779b9u);
  std::vector<Edge> e = gnp(n, p, seed).edges();
  for (NodeId i = 1; i < n; ++i) {
    std::uniform_int_distribution<NodeId> pick(0, i - 1);
    e.push_back({pick(rng), i});
  }
  return from_edges(e, n);
}

inline Eigen::MatrixXd dense_adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) A(e.u, e.v) = A(e.v, e.u) = 1.0;
  return A;
}

// Cyclic Jacobi rotations on a dense symmetric matrix; returns eigenvalues ascending.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, double tol = 1e-13,
                                              int max_sweeps = 100) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) < tol) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Spectrum of D^{-1/2} A D^{-1/2}, ascending. Requires no isolated nodes.
inline std::vector<double> normalized_spectrum(const Graph& g) {
  Eigen::MatrixXd A = dense_adjacency(g);
  const auto n = A.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (A(i, j) != 0.0) A(i, j) /= std::sqrt(double(g.degree(i)) * double(g.degree(j)));
  return jacobi_eigenvalues(A);
}

// Least-squares slope of log CCDF against log degree over degrees in [lo, hi].
inline double ccdf_slope(std::vector<double> x, double lo, double hi) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0 && x[i - 1] == x[i]) continue;
    if (x[i] < lo || x[i] > hi) continue;
    const double tail = (n - static_cast<double>(i)) / n;  // P(X >= x[i])
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(tail));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(lx.size());
  my /= double(lx.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace testsupport
