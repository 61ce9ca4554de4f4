#include "epithresh/walker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "epithresh/estimators.hpp"
#include "epithresh/spectral.hpp"

namespace epithresh {

LocalOracle::LocalOracle(const Graph& g) : graph_(&g) {
  if (g.edge_count() == 0) throw OracleError("local oracle: graph has no edges");
}

std::uint64_t LocalOracle::query_degree(NodeId v) {
  if (v >= graph_->node_count()) throw OracleError("degree: node " + std::to_string(v) + " out of range");
  return graph_->degree(v);
}

NodeId LocalOracle::query_neighbor(NodeId v, std::uint64_t k) {
  if (v >= graph_->node_count()) throw OracleError("neighbor: node " + std::to_string(v) + " out of range");
  const auto nb = graph_->neighbors(v);
  if (k >= nb.size()) {
    throw OracleError("neighbor: index " + std::to_string(k) + " out of range for node " +
                      std::to_string(v) + " of degree " + std::to_string(nb.size()));
  }
  return nb[k];
}

std::unique_ptr<GraphOracle> local_oracle(const Graph& g) {
  return std::make_unique<LocalOracle>(g);
}

RandomWalker::RandomWalker(GraphOracle& oracle, NodeId start, std::uint64_t seed, bool record_path)
    : oracle_(&oracle),
      engine_(make_engine(seed, 0x3a1c)),
      position_(start),
      seen_(oracle.node_count(), false),
      record_path_(record_path) {
  if (start >= seen_.size()) {
    throw OracleError("walk: start node " + std::to_string(start) + " out of range");
  }
  visit(start);
}

void RandomWalker::visit(NodeId v) {
  if (v >= seen_.size()) throw OracleError("walk: oracle returned node " + std::to_string(v) + " out of range");
  if (!seen_[v]) {
    seen_[v] = true;
    ++distinct_;
  }
  if (record_path_) path_.push_back(v);
}

std::uint64_t RandomWalker::move() {
  const std::uint64_t d = oracle_->degree(position_);
  ++queries_.degree_queries;
  if (d == 0) {
    throw OracleError("walk: reached node " + std::to_string(position_) + " with degree 0");
  }
  const NodeId next = oracle_->neighbor(position_, uniform_index(engine_, d));
  ++queries_.neighbor_queries;
  position_ = next;
  ++steps_;
  visit(next);
  return d;
}

WalkReport random_walk_estimate(GraphOracle& oracle, const WalkConfig& cfg) {
  if (cfg.r == 0) throw OracleError("walk: r must be at least 1");
  if (cfg.thin == 0) throw OracleError("walk: thin must be at least 1");
  RandomWalker walker(oracle, cfg.start, cfg.seed, cfg.record_path);
  for (std::uint64_t t = 0; t < cfg.t_star; ++t) walker.move();
  // Integer accumulation keeps the estimate independent of summation order.
  std::uint64_t sum = 0;
  for (std::uint64_t i = 0; i < cfg.r; ++i) {
    sum += walker.move();
    if (i + 1 < cfg.r) {
      for (std::uint64_t j = 1; j < cfg.thin; ++j) walker.move();
    }
  }
  WalkReport rep;
  rep.estimate = static_cast<double>(sum) / static_cast<double>(cfg.r);
  rep.r = cfg.r;
  rep.total_steps = walker.steps();
  rep.degree_queries = walker.queries().degree_queries;
  rep.neighbor_queries = walker.queries().neighbor_queries;
  rep.total_queries = walker.queries().total();
  rep.distinct_nodes = walker.distinct_nodes();
  rep.start = cfg.start;
  rep.seed = cfg.seed;
  rep.path = walker.take_path();
  return rep;
}

CurveReference make_curve_reference(const Graph& g) {
  CurveReference ref;
  ref.t1 = t1_estimate(g).t1;
  ref.lambda = spectral_radius(g).value;
  ref.n = g.node_count();
  ref.bipartite = !bipartition(g).empty();
  return ref;
}

ErrorCurve error_curve(GraphOracle& oracle, const CurveReference& reference,
                       std::span<const std::uint64_t> seeds,
                       std::span<const std::uint64_t> checkpoints, const CurveOptions& opt) {
  if (seeds.empty()) throw OracleError("error_curve: empty seed list");
  if (checkpoints.empty()) throw OracleError("error_curve: no checkpoints");
  if (opt.thin == 0) throw OracleError("error_curve: thin must be at least 1");
  std::vector<std::uint64_t> budgets(checkpoints.begin(), checkpoints.end());
  std::sort(budgets.begin(), budgets.end());

  ErrorCurve curve;
  curve.reference = reference;
  curve.seeds.assign(seeds.begin(), seeds.end());
  curve.warn_bipartite = reference.bipartite;
  curve.points.resize(budgets.size());
  for (std::size_t i = 0; i < budgets.size(); ++i) curve.points[i].budget = budgets[i];

  const std::uint64_t cap =
      opt.max_steps ? opt.max_steps : 2000 * std::max<std::uint64_t>(oracle.node_count(), 1);

  for (const std::uint64_t seed : seeds) {
    RandomWalker walker(oracle, opt.start, seed);
    std::uint64_t sum = 0;
    std::uint64_t samples = 0;
    std::size_t next = 0;
    auto record = [&](bool reached) {
      CurvePoint& pt = curve.points[next];
      const double est = samples ? static_cast<double>(sum) / static_cast<double>(samples) : 0.0;
      pt.estimates.push_back(est);
      pt.mean_samples += static_cast<double>(samples);
      pt.mean_steps += static_cast<double>(walker.steps());
      pt.mean_queries += static_cast<double>(walker.queries().total());
      if (reached) ++pt.reached;
      ++next;
    };
    std::uint64_t since_sample = 0;
    bool sampling = false;
    while (next < budgets.size() && walker.steps() < cap) {
      if (!sampling && walker.steps() >= opt.t_star) {
        sampling = true;
        since_sample = opt.thin;  // first sample right after burn-in
      }
      if (sampling && since_sample >= opt.thin) {
        sum += walker.move();
        ++samples;
        since_sample = 1;
      } else {
        walker.move();
        ++since_sample;
      }
      while (next < budgets.size() && samples > 0 && walker.distinct_nodes() >= budgets[next]) {
        record(true);
      }
    }
    while (next < budgets.size()) record(false);
  }

  const double count = static_cast<double>(seeds.size());
  for (CurvePoint& pt : curve.points) {
    double e1 = 0.0;
    double e2 = 0.0;
    double est = 0.0;
    for (double t2 : pt.estimates) {
      e1 += std::abs(t2 - reference.t1) / reference.t1;
      e2 += std::abs(t2 - reference.lambda) / reference.lambda;
      est += t2;
    }
    pt.mean_eps_t1_t2 = e1 / count;
    pt.mean_eps_lambda_t2 = e2 / count;
    pt.mean_estimate = est / count;
    pt.mean_samples /= count;
    pt.mean_steps /= count;
    pt.mean_queries /= count;
  }
  return curve;
}

std::string error_curve_csv(const ErrorCurve& curve) {
  std::ostringstream out;
  out.precision(10);
  out << "# reference_t1=" << curve.reference.t1 << " reference_lambda=" << curve.reference.lambda
      << " n=" << curve.reference.n << " seeds=";
  for (std::size_t i = 0; i < curve.seeds.size(); ++i) out << (i ? ";" : "") << curve.seeds[i];
  out << '\n';
  if (curve.warn_bipartite) out << "# warning: reference graph is bipartite; burn-in cannot reach pi\n";
  out << "budget,fraction_seen,mean_estimate,mean_eps_T1T2,mean_eps_lambdaT2,mean_samples,"
         "mean_steps,mean_queries,reached\n";
  for (const CurvePoint& p : curve.points) {
    out << p.budget << ','
        << (curve.reference.n ? static_cast<double>(p.budget) / static_cast<double>(curve.reference.n) : 0.0)
        << ',' << p.mean_estimate << ',' << p.mean_eps_t1_t2 << ',' << p.mean_eps_lambda_t2 << ','
        << p.mean_samples << ',' << p.mean_steps << ',' << p.mean_queries << ',' << p.reached << '\n';
  }
  return out.str();
}

}  // namespace epithresh
