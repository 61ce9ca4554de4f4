#include "epithresh/spectral.hpp"

#include <string>

namespace epithresh {

DistributionVector stationary_distribution(const Graph& g) {
  const EdgeIndex m1 = 2 * g.edge_count();
  if (m1 == 0) throw SpectralError("stationary_distribution: graph has no edges");
  DistributionVector pi(static_cast<Eigen::Index>(g.node_count()));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    pi[v] = static_cast<double>(g.degree(v)) / static_cast<double>(m1);
  }
  return pi;
}

DistributionVector walk_step(const Graph& g, const DistributionVector& q) {
  DistributionVector next = DistributionVector::Zero(q.size());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto d = g.degree(u);
    if (d == 0 || q[u] == 0.0) continue;
    const double share = q[u] / static_cast<double>(d);
    for (NodeId w : g.neighbors(u)) next[w] += share;
  }
  return next;
}

namespace {

std::string describe_parts(const std::vector<std::uint8_t>& color) {
  constexpr std::size_t kShow = 8;
  std::string parts[2];
  std::size_t shown[2] = {0, 0};
  std::size_t total[2] = {0, 0};
  for (std::size_t v = 0; v < color.size(); ++v) {
    const int c = color[v];
    ++total[c];
    if (shown[c] < kShow) {
      if (shown[c]) parts[c] += ",";
      parts[c] += std::to_string(v);
      ++shown[c];
    }
  }
  for (int c = 0; c < 2; ++c) {
    if (total[c] > shown[c]) parts[c] += ",...(" + std::to_string(total[c]) + " nodes)";
  }
  return "{" + parts[0] + "} and {" + parts[1] + "}";
}

}  // namespace

std::uint64_t tv_mixing_time(const Graph& g, NodeId start, const MixingOptions& opt) {
  const std::size_t n = g.node_count();
  if (n > opt.max_nodes) {
    throw SpectralError("tv_mixing_time: n=" + std::to_string(n) + " exceeds limit " +
                        std::to_string(opt.max_nodes));
  }
  if (start >= n) throw SpectralError("tv_mixing_time: start node out of range");
  if (g.edge_count() == 0 || !is_connected(g)) {
    throw SpectralError("tv_mixing_time: graph must be connected with at least one edge");
  }
  if (const auto color = bipartition(g); !color.empty()) {
    throw SpectralError("tv_mixing_time: graph is bipartite (walk is periodic), parts " +
                        describe_parts(color));
  }
  const double threshold =
      opt.threshold < 0.0 ? 1.0 / (static_cast<double>(n) * static_cast<double>(n))
                          : opt.threshold;
  const DistributionVector pi = stationary_distribution(g);
  DistributionVector q = DistributionVector::Zero(static_cast<Eigen::Index>(n));
  q[start] = 1.0;
  for (std::uint64_t t = 0; t <= opt.max_steps; ++t) {
    if ((q - pi).lpNorm<1>() <= threshold) return t;
    q = walk_step(g, q);
  }
  throw SpectralError("tv_mixing_time: threshold " + std::to_string(threshold) +
                      " not reached within " + std::to_string(opt.max_steps) + " steps");
}

}  // namespace epithresh
