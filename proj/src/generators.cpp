#include "epithresh/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace epithresh {

ExpectedDegrees make_expected_degrees(std::vector<double> delta) {
  if (delta.empty()) throw std::invalid_argument("expected degrees: empty vector");
  ExpectedDegrees ed;
  ed.delta_max = 0.0;
  ed.delta_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const double d = delta[i];
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("expected degrees: delta[" + std::to_string(i) +
                                  "] must be positive and finite");
    }
    ed.mu1 += d;
    ed.mu2 += d * d;
    ed.delta_max = std::max(ed.delta_max, d);
    ed.delta_min = std::min(ed.delta_min, d);
  }
  ed.S = ed.mu1;
  ed.delta = std::move(delta);
  return ed;
}

PowerLawResult power_law_expected_degrees(const PowerLawOptions& opt, GeneratorSeed seed) {
  if (opt.n == 0) throw std::invalid_argument("power law: n must be positive");
  if (!(opt.beta > 2.0)) throw std::invalid_argument("power law: beta must exceed 2");
  if (!(opt.d_min >= 1.0)) throw std::invalid_argument("power law: d_min must be >= 1");

  Engine eng = make_engine(seed);
  const double shape = opt.beta - 1.0;
  std::vector<double> delta(opt.n);
  for (double& d : delta) d = opt.d_min * std::pow(uniform_open(eng), -1.0 / shape);

  // Solve c^2 = sum min(delta_i, c) over the descending order: with the k
  // largest entries clamped, c^2 - k c - tail_k = 0 where tail_k sums the rest.
  std::vector<double> sorted = delta;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<double> suffix(sorted.size() + 1, 0.0);
  for (std::size_t i = sorted.size(); i-- > 0;) suffix[i] = suffix[i + 1] + sorted[i];

  PowerLawResult out;
  double cap = std::sqrt(suffix[0]);
  std::size_t k = 0;
  if (sorted[0] > cap) {
    for (k = 1; k <= sorted.size(); ++k) {
      const double kd = static_cast<double>(k);
      const double c = 0.5 * (kd + std::sqrt(kd * kd + 4.0 * suffix[k]));
      const double next = k < sorted.size() ? sorted[k] : 0.0;
      if (c >= next && c <= sorted[k - 1]) {
        cap = c;
        break;
      }
    }
    for (double& d : delta) {
      if (d > cap) {
        d = cap;
        ++out.clamped;
      }
    }
  }
  out.cap = cap;
  out.degrees = make_expected_degrees(std::move(delta));
  return out;
}

namespace {

// Products within rounding of one (e.g. two entries at the feasibility cap)
// are not reported as clamped.
constexpr double kClampSlack = 1.0 + 1e-12;

void check_kernel(const RankOneKernel& k) {
  if (!(k.scale > 0.0) || !std::isfinite(k.scale)) {
    throw std::invalid_argument("rank-one kernel: scale must be positive");
  }
  for (double w : k.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("rank-one kernel: weights must be finite and nonnegative");
    }
  }
}

}  // namespace

SampledGraph sample_rank_one_naive(const RankOneKernel& k, GeneratorSeed seed,
                                   const NaiveOptions& opt) {
  check_kernel(k);
  const std::size_t n = k.weights.size();
  if (n > opt.max_nodes) {
    throw std::invalid_argument("naive sampler: n=" + std::to_string(n) +
                                " exceeds the quadratic-loop guard " +
                                std::to_string(opt.max_nodes));
  }
  Engine eng = make_engine(seed);
  SampledGraph out;
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      double p = k.scale * k.weights[i] * k.weights[j];
      if (p > 1.0) {
        if (p > kClampSlack) ++out.clamped_pairs;
        p = 1.0;
      }
      if (uniform_open(eng) < p) edges.push_back({i, j});
    }
  }
  out.graph = build_graph(edges, n).graph;
  return out;
}

SampledGraph sample_rank_one_fast(const RankOneKernel& k, GeneratorSeed seed) {
  check_kernel(k);
  const std::size_t n = k.weights.size();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return k.weights[a] > k.weights[b]; });
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = k.weights[order[i]];

  SampledGraph out;
  // Pairs with scale * w_a * w_b > 1; w is descending so they form a prefix per row.
  for (std::size_t a = 0; a < n; ++a) {
    if (w[a] <= 0.0) break;
    const auto end = std::partition_point(w.begin(), w.end(), [&](double x) {
      return x * w[a] * k.scale > kClampSlack;
    });
    const auto hi = static_cast<std::size_t>(end - w.begin());
    if (hi > a + 1) out.clamped_pairs += hi - a - 1;
  }

  Engine eng = make_engine(seed);
  std::vector<Edge> edges;
  const auto prob = [&](std::size_t a, std::size_t b) {
    return std::min(1.0, k.scale * w[a] * w[b]);
  };
  for (std::size_t u = 0; u + 1 < n; ++u) {
    std::size_t v = u + 1;
    double p = prob(u, v);
    while (v < n && p > 0.0) {
      if (p < 1.0) {
        const double skip = std::floor(std::log(uniform_open(eng)) / std::log1p(-p));
        if (skip >= static_cast<double>(n - v)) break;
        v += static_cast<std::size_t>(skip);
      }
      const double q = prob(u, v);
      if (q > p) throw std::logic_error("fast sampler: weights not sorted");
      if (uniform_open(eng) < q / p) edges.push_back({order[u], order[v]});
      p = q;
      ++v;
    }
  }
  out.graph = build_graph(edges, n).graph;
  return out;
}

SampledGraph chung_lu_sample_naive(const ExpectedDegrees& ed, GeneratorSeed seed,
                                   const NaiveOptions& opt) {
  return sample_rank_one_naive({ed.delta, 1.0 / ed.S}, seed, opt);
}

SampledGraph chung_lu_sample_fast(const ExpectedDegrees& ed, GeneratorSeed seed) {
  return sample_rank_one_fast({ed.delta, 1.0 / ed.S}, seed);
}

ProductFormResult product_form_sample(std::size_t n, double theta_lo, double theta_hi,
                                      GeneratorSeed seed) {
  if (!(theta_lo >= 0.0 && theta_hi > theta_lo && theta_hi <= 1.0)) {
    throw std::invalid_argument("product form: need 0 <= lo < hi <= 1");
  }
  ProductFormResult out;
  out.theta.resize(n);
  // Parameters and edges use separate streams so either can be replayed alone.
  Engine eng = make_engine(GeneratorSeed{seed.seed, seed.stream * 2 + 1});
  for (double& t : out.theta) t = theta_lo + (theta_hi - theta_lo) * uniform_open(eng);
  out.sample = sample_rank_one_fast({out.theta, 1.0},
                                    GeneratorSeed{seed.seed, seed.stream * 2});
  return out;
}

Graph preferential_attachment(std::size_t n, std::size_t edges_per_node, GeneratorSeed seed) {
  const std::size_t k = edges_per_node;
  if (k < 1) throw std::invalid_argument("preferential attachment: edges_per_node must be >= 1");
  if (n <= k) {
    throw std::invalid_argument("preferential attachment: n=" + std::to_string(n) +
                                " must exceed edges_per_node=" + std::to_string(k));
  }
  Engine eng = make_engine(seed);
  std::vector<Edge> edges;
  edges.reserve(preferential_attachment_edge_count(n, k));
  // Each edge contributes both endpoints, so a uniform pick is degree-proportional.
  std::vector<NodeId> ends;
  ends.reserve(2 * preferential_attachment_edge_count(n, k));
  for (NodeId i = 0; i <= k; ++i) {
    for (NodeId j = i + 1; j <= k; ++j) {
      edges.push_back({i, j});
      ends.push_back(i);
      ends.push_back(j);
    }
  }
  std::vector<NodeId> targets;
  targets.reserve(k);
  for (auto t = static_cast<NodeId>(k + 1); t < n; ++t) {
    targets.clear();
    while (targets.size() < k) {
      const NodeId c = ends[uniform_index(eng, ends.size())];
      if (std::find(targets.begin(), targets.end(), c) == targets.end()) targets.push_back(c);
    }
    for (NodeId c : targets) {
      edges.push_back({c, t});
      ends.push_back(c);
      ends.push_back(t);
    }
  }
  return build_graph(edges, n).graph;
}

}  // namespace epithresh
