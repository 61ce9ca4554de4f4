#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "epithresh/graph.hpp"
#include "epithresh/rng.hpp"

namespace epithresh {

/// Chung-Lu parameter vector: P(i, j) = delta_i * delta_j / S with S = sum(delta).
struct ExpectedDegrees {
  std::vector<double> delta;
  double S = 0.0;  // == mu1
  double delta_max = 0.0;
  double delta_min = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;

  std::size_t size() const { return delta.size(); }
  /// delta_max^2 <= S, i.e. every pair probability is at most one.
  bool feasible() const { return delta_max * delta_max <= S; }
};

/// Validates positivity and fills the summary fields.
ExpectedDegrees make_expected_degrees(std::vector<double> delta);

struct PowerLawOptions {
  std::size_t n = 0;
  double beta = 2.5;   // density exponent, tail P(X > x) ~ x^{-(beta - 1)}
  double d_min = 1.0;
};

struct PowerLawResult {
  ExpectedDegrees degrees;
  std::size_t clamped = 0;  // entries lowered to the feasibility cap
  double cap = 0.0;
};

/// i.i.d. Pareto(beta - 1, d_min) draws, then entries above the cap are
/// lowered to it, where the cap c solves c^2 = sum_i min(delta_i, c). After
/// clamping delta_max^2 == S holds exactly when anything was clamped.
PowerLawResult power_law_expected_degrees(const PowerLawOptions& opt, GeneratorSeed seed);

struct SampledGraph {
  Graph graph;
  /// Pairs whose raw probability exceeded one and were clamped to one.
  std::uint64_t clamped_pairs = 0;
};

/// Rank-one kernel with an explicit scale: P(i, j) = min(1, scale * w_i * w_j).
/// Chung-Lu is scale = 1/S; the product form theta_i * theta_j is scale = 1.
struct RankOneKernel {
  std::span<const double> weights;
  double scale = 1.0;
};

struct NaiveOptions {
  std::size_t max_nodes = 20000;  // quadratic loop guard
};

/// Reference sampler: one Bernoulli trial per unordered pair.
SampledGraph sample_rank_one_naive(const RankOneKernel& k, GeneratorSeed seed,
                                   const NaiveOptions& opt = {});

/// Edge-skipping sampler over weight-sorted nodes, expected O(n + m). Same
/// per-pair marginals as the naive sampler.
SampledGraph sample_rank_one_fast(const RankOneKernel& k, GeneratorSeed seed);

SampledGraph chung_lu_sample_naive(const ExpectedDegrees& ed, GeneratorSeed seed,
                                   const NaiveOptions& opt = {});
SampledGraph chung_lu_sample_fast(const ExpectedDegrees& ed, GeneratorSeed seed);

/// Product form P(i, j) = theta_i * theta_j with theta_i ~ U(lo, hi).
struct ProductFormResult {
  std::vector<double> theta;
  SampledGraph sample;
};
ProductFormResult product_form_sample(std::size_t n, double theta_lo, double theta_hi,
                                      GeneratorSeed seed);

/// Barabasi-Albert style growth. Starts from a clique on edges_per_node + 1
/// nodes; each later node picks edges_per_node distinct existing targets with
/// probability proportional to current degree.
Graph preferential_attachment(std::size_t n, std::size_t edges_per_node, GeneratorSeed seed);

/// Exact edge count produced by preferential_attachment.
constexpr std::uint64_t preferential_attachment_edge_count(std::uint64_t n, std::uint64_t k) {
  return k * (k + 1) / 2 + k * (n - k - 1);
}

}  // namespace epithresh
