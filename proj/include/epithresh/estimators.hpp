#pragma once

#include <cstdint>
#include <optional>

#include "epithresh/generators.hpp"
#include "epithresh/graph.hpp"
#include "epithresh/spectral.hpp"

namespace epithresh {

/// lambda(P) of the rank-one Chung-Lu kernel: mu2 / mu1.
double lambda_p(const ExpectedDegrees& ed);

struct MomentEstimate {
  double t1 = 0.0;
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
};

/// Degree-moment ratio m2 / m1 from exact integer sums.
MomentEstimate t1_estimate(const Graph& g);
MomentEstimate t1_estimate(const DegreeStats& stats);

/// |estimate / reference - 1|.
double relative_error(double estimate, double reference);

struct BoundReport {
  double bound = 0.0;
  bool condition_holds = true;
  std::size_t n = 0;
  double eps = 0.0;
  double delta_max = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
};

/// Tail bound on |m1 / mu1 - 1| > eps: 2 exp(-eps^2 mu1^2 / (n (n - 1))).
BoundReport hoeffding_m1_bound(const ExpectedDegrees& ed, double eps);

/// Deviation bound |lambda(A) - lambda(P)| <= 2 sqrt(Delta ln(2n / eps)),
/// valid with probability 1 - eps when Delta > (4/9) ln(2n / eps).
BoundReport chung_radcliffe_bound(const ExpectedDegrees& ed, double eps);

struct ConditionReport {
  bool holds = false;
  double lhs = 0.0;     // mu2 / mu1
  double rhs = 0.0;     // ln(n) sqrt(delta_max)
  double margin = 0.0;  // lhs / rhs
};

/// Strict check mu2 / mu1 > ln(n) sqrt(delta_max), under which lambda(A)
/// concentrates around lambda(P).
ConditionReport chunglu_condition(const ExpectedDegrees& ed);

/// (mu2 / mu1) / ln^2 n, a finite-n diagnostic for the asymptotic
/// requirement that lambda(P) dominate log^2 n. No cutoff is implied.
double spectral_dominance_ratio(const ExpectedDegrees& ed);

struct SampleSizePlan {
  std::uint64_t r = 1;
  std::uint64_t t_star = 0;
  double eps = 0.0;
  double delta = 0.0;
  double gap = 0.0;
  double degree_factor = 0.0;  // 6 m1 d_max / m2
};

/// Walk sample count for a (1 +- eps) estimate with probability 1 - delta:
/// r = ceil(6 m1 d_max / m2 * ln(1/delta) / (gap eps^{3/2})), and burn-in
/// t_star = ceil(ln n) unless overridden.
SampleSizePlan sample_size(const DegreeStats& stats, double gap, double eps, double delta,
                           std::optional<std::uint64_t> t_star = std::nullopt);
SampleSizePlan sample_size(const DegreeStats& stats, const SpectralGap& gap, double eps,
                           double delta, std::optional<std::uint64_t> t_star = std::nullopt);

}  // namespace epithresh
