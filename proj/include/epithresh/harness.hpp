#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epithresh/graph.hpp"
#include "epithresh/walker.hpp"

namespace epithresh {

/// Worker count from EPITHRESH_THREADS, else hardware concurrency (at least 1).
std::size_t default_thread_count();

/// Runs fn(0..count-1) over `threads` workers. Results must be written by
/// index so output does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  std::size_t threads = 0);

struct ExperimentRecord {
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double lambda_a = 0.0;
  double t1 = 0.0;
  std::optional<double> t2;
  double e1 = 0.0;
  std::optional<double> eps_t1_t2;
  std::optional<double> eps_lambda_t2;
  std::optional<std::uint64_t> nodes_seen;
  double runtime_lambda = 0.0;  // seconds
  double runtime_t1 = 0.0;
  double runtime_t2 = 0.0;
};

struct CsvOptions {
  /// Wall-clock columns break byte-for-byte reproducibility, so they are opt-in.
  bool include_timing = false;
  std::vector<std::string> comments;  // emitted as "# ..." lines before the header
};

std::string records_csv(const std::vector<ExperimentRecord>& records, const CsvOptions& opt);

struct Summary {
  std::size_t count = 0;
  double mean_e1 = 0.0;
  double sd_e1 = 0.0;  // sample SD
  double mean_runtime_lambda = 0.0;
  double mean_runtime_t1 = 0.0;
};

Summary summarize(const std::vector<ExperimentRecord>& records);

struct T1BenchmarkConfig {
  std::size_t n = 5000;
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  double theta_lo = 0.0;
  double theta_hi = 0.25;
  std::size_t threads = 0;
};

struct T1BenchmarkResult {
  T1BenchmarkConfig config;
  std::vector<ExperimentRecord> records;
  Summary summary;
};

/// lambda(A) versus T1 over graphs drawn from P(i, j) = theta_i theta_j with
/// theta_i ~ U(theta_lo, theta_hi) (product form, no 1/S normalizer).
T1BenchmarkResult run_t1_benchmark(const T1BenchmarkConfig& cfg);

enum class GraphModel { kChungLu, kPreferentialAttachment };

GraphModel parse_model(std::string_view name);
std::string model_name(GraphModel m);

struct SyntheticConfig {
  GraphModel model = GraphModel::kChungLu;
  std::size_t n = 10000;
  double beta = 2.5;  // power-law exponent for Chung-Lu
  double d_min = 1.0;
  std::size_t edges_per_node = 5;
  std::uint64_t seed = 0;
  std::size_t reps = 10;
  std::uint64_t thin = 10;
  /// Burn-in; absent selects ceil(10 ln n) on the walked component.
  std::optional<std::uint64_t> t_star;
  /// Fractions of the generated graph's node count n; budgets beyond the
  /// walked component's size are capped at that size.
  std::vector<double> checkpoint_fractions = {0.01, 0.02, 0.05, 0.10, 0.20, 0.50, 1.00};
};

struct GraphSummary {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double lambda = 0.0;
  double t1 = 0.0;
  double e1 = 0.0;
};

struct SyntheticResult {
  SyntheticConfig config;
  GraphSummary full;       // whole generated graph
  GraphSummary component;  // largest connected component, which the walks explore
  std::uint64_t clamped = 0;
  std::uint64_t t_star = 0;
  ErrorCurve curve;
  std::vector<ExperimentRecord> records;  // one per (walk seed, checkpoint)
  double runtime_lambda = 0.0;
  double runtime_t1 = 0.0;
  double runtime_walks = 0.0;
};

/// Seeds of the replicated walks, derived from the experiment seed.
std::vector<std::uint64_t> walk_seeds(std::uint64_t seed, std::size_t reps);

Graph generate_model_graph(const SyntheticConfig& cfg, std::uint64_t* clamped = nullptr);

/// One generated graph, lambda(A) and T1, then reps thinned walks on its
/// largest component read off at nodes-seen checkpoints.
SyntheticResult run_synthetic_experiment(const SyntheticConfig& cfg);

std::string synthetic_config_comments(const SyntheticConfig& cfg);

/// records.csv, curve.csv and summary.json (deterministic) plus timings.csv.
void write_synthetic_outputs(const SyntheticResult& r, const std::filesystem::path& dir);
void write_t1_benchmark_outputs(const T1BenchmarkResult& r, const std::filesystem::path& dir);

}  // namespace epithresh
