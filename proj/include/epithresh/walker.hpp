#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "epithresh/graph.hpp"
#include "epithresh/rng.hpp"

namespace epithresh {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QueryCounters {
  std::uint64_t degree_queries = 0;
  std::uint64_t neighbor_queries = 0;
  std::uint64_t total() const { return degree_queries + neighbor_queries; }
};

/// Node-query access to a graph. Every degree/neighbor call is counted;
/// node_count() is metadata and not counted.
class GraphOracle {
 public:
  virtual ~GraphOracle() = default;

  std::uint64_t degree(NodeId v) {
    degree_queries_.fetch_add(1, std::memory_order_relaxed);
    return query_degree(v);
  }
  /// k-th neighbor of v, k in [0, degree(v)). Stable across calls.
  NodeId neighbor(NodeId v, std::uint64_t k) {
    neighbor_queries_.fetch_add(1, std::memory_order_relaxed);
    return query_neighbor(v, k);
  }
  virtual std::size_t node_count() = 0;

  QueryCounters counters() const {
    return {degree_queries_.load(std::memory_order_relaxed),
            neighbor_queries_.load(std::memory_order_relaxed)};
  }

 protected:
  virtual std::uint64_t query_degree(NodeId v) = 0;
  virtual NodeId query_neighbor(NodeId v, std::uint64_t k) = 0;

 private:
  std::atomic<std::uint64_t> degree_queries_{0};
  std::atomic<std::uint64_t> neighbor_queries_{0};
};

/// In-memory oracle; neighbor(v, k) is the k-th entry of the sorted adjacency.
class LocalOracle final : public GraphOracle {
 public:
  explicit LocalOracle(const Graph& g);
  std::size_t node_count() override { return graph_->node_count(); }

 protected:
  std::uint64_t query_degree(NodeId v) override;
  NodeId query_neighbor(NodeId v, std::uint64_t k) override;

 private:
  const Graph* graph_;
};

/// The local adapter. The graph must outlive the oracle.
std::unique_ptr<GraphOracle> local_oracle(const Graph& g);

struct WalkConfig {
  std::uint64_t t_star = 0;  // burn-in moves
  std::uint64_t r = 1;       // degree samples
  std::uint64_t thin = 10;   // moves between consecutive samples
  std::uint64_t seed = 0;
  NodeId start = 0;
  bool record_path = false;
};

struct WalkReport {
  double estimate = 0.0;
  std::uint64_t r = 0;
  std::uint64_t total_steps = 0;  // == t_star + (r - 1) * thin + 1
  std::uint64_t total_queries = 0;
  std::uint64_t degree_queries = 0;
  std::uint64_t neighbor_queries = 0;
  std::uint64_t distinct_nodes = 0;
  NodeId start = 0;
  std::uint64_t seed = 0;
  std::vector<NodeId> path;  // visited positions, filled when record_path is set
};

/// Simple random walk over an oracle with its own per-walk query ledger.
/// Each move queries degree(x) and one uniformly chosen neighbor(x, k); the
/// degree returned is the departure node's, which is what a sample records.
class RandomWalker {
 public:
  RandomWalker(GraphOracle& oracle, NodeId start, std::uint64_t seed, bool record_path = false);

  /// Move to a uniform neighbor; returns the degree of the node left.
  std::uint64_t move();

  NodeId position() const { return position_; }
  std::uint64_t steps() const { return steps_; }
  std::uint64_t distinct_nodes() const { return distinct_; }
  const QueryCounters& queries() const { return queries_; }
  std::vector<NodeId> take_path() { return std::move(path_); }

 private:
  void visit(NodeId v);

  GraphOracle* oracle_;
  Engine engine_;
  NodeId position_;
  std::uint64_t steps_ = 0;
  std::uint64_t distinct_ = 0;
  QueryCounters queries_;
  std::vector<bool> seen_;
  bool record_path_;
  std::vector<NodeId> path_;
};

/// Burn in for t_star moves, then average r degree samples spaced thin moves
/// apart. thin = 1 samples every consecutive position.
WalkReport random_walk_estimate(GraphOracle& oracle, const WalkConfig& cfg);

struct CurveReference {
  double t1 = 0.0;
  double lambda = 0.0;
  std::size_t n = 0;
  bool bipartite = false;  // burn-in cannot reach pi on a periodic chain
};

/// T1, lambda(A) (power iteration) and periodicity of a reference graph.
CurveReference make_curve_reference(const Graph& g);

struct CurvePoint {
  std::uint64_t budget = 0;  // distinct nodes seen
  double mean_eps_t1_t2 = 0.0;
  double mean_eps_lambda_t2 = 0.0;
  double mean_estimate = 0.0;
  double mean_samples = 0.0;
  double mean_steps = 0.0;
  double mean_queries = 0.0;
  std::size_t reached = 0;  // seeds whose walk reached the budget before the step cap
  std::vector<double> estimates;  // per seed, at this budget
};

struct CurveOptions {
  std::uint64_t t_star = 0;
  std::uint64_t thin = 10;
  NodeId start = 0;
  /// Hard cap per walk; 0 selects 2000 * n.
  std::uint64_t max_steps = 0;
};

struct ErrorCurve {
  std::vector<CurvePoint> points;
  CurveReference reference;
  std::vector<std::uint64_t> seeds;
  bool warn_bipartite = false;
};

/// For each seed run one thinned walk and read off the running T2 the first
/// time the distinct-nodes-seen count reaches each checkpoint. Errors are
/// |T2 - T1| / T1 and |T2 - lambda| / lambda, averaged over seeds.
ErrorCurve error_curve(GraphOracle& oracle, const CurveReference& reference,
                       std::span<const std::uint64_t> seeds,
                       std::span<const std::uint64_t> checkpoints, const CurveOptions& opt);

std::string error_curve_csv(const ErrorCurve& curve);

}  // namespace epithresh
