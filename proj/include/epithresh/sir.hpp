#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epithresh/graph.hpp"

namespace epithresh {

/// Discrete-time synchronous SIR. Within a step, a susceptible node with k
/// infected neighbors becomes infected with probability 1 - (1 - beta)^k and
/// each infected node recovers with probability mu, both read from the same
/// start-of-step snapshot.
struct SirParams {
  double beta = 0.0;  // per-contact, per-step infection probability in [0, 1]
  double mu = 0.2;    // per-step recovery probability in (0, 1]
  std::vector<NodeId> initial_infected;
  /// 0 selects 10 * n.
  std::uint64_t max_steps = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kSirDiscretization =
    "discrete-time synchronous; infection 1-(1-beta)^k from start-of-step snapshot; "
    "recovery prob mu per step";

struct SirTrajectory {
  std::vector<std::uint64_t> S;
  std::vector<std::uint64_t> I;
  std::vector<std::uint64_t> R;
  std::uint64_t final_size = 0;  // R at stop plus I if cut off
  std::uint64_t steps = 0;
};

SirTrajectory sir_simulate(const Graph& g, const SirParams& p);

std::string sir_trajectory_csv(const SirTrajectory& t, const SirParams& p);

struct SweepRow {
  double ratio = 0.0;  // beta / mu in units of 1 / lambda(A)
  double beta = 0.0;
  double mean_final_fraction = 0.0;
  double sd_final_fraction = 0.0;
  std::vector<double> final_fractions;
};

struct SweepOptions {
  double mu = 0.2;
  std::size_t reps = 50;
  std::uint64_t seed = 0;
  /// Spectral radius; computed by power iteration when absent.
  std::optional<double> lambda;
};

struct SweepResult {
  double lambda = 0.0;
  double mu = 0.0;
  std::vector<SweepRow> rows;
};

/// For each ratio c, beta = c * mu / lambda(A); each replication starts from one
/// uniformly chosen infected node.
SweepResult threshold_sweep(const Graph& g, std::span<const double> ratios,
                            const SweepOptions& opt);

std::string sweep_csv(const SweepResult& r, const SweepOptions& opt);

/// Spearman rank correlation with average ranks for ties.
double spearman_rho(std::span<const double> x, std::span<const double> y);

}  // namespace epithresh
