#include "epithresh/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace epithresh {

double lambda_p(const ExpectedDegrees& ed) {
  if (ed.delta.empty() || !(ed.mu1 > 0.0)) {
    throw std::invalid_argument("lambda_p: expected degrees must be nonempty and positive");
  }
  return ed.mu2 / ed.mu1;
}

MomentEstimate t1_estimate(const DegreeStats& stats) {
  if (stats.m1 == 0) throw std::invalid_argument("t1_estimate: graph has no edges");
  return {static_cast<double>(stats.m2) / static_cast<double>(stats.m1), stats.m1, stats.m2};
}

MomentEstimate t1_estimate(const Graph& g) {
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::uint64_t d = g.degree(v);
    m1 += d;
    m2 += d * d;
  }
  if (m1 == 0) throw std::invalid_argument("t1_estimate: graph has no edges");
  return {static_cast<double>(m2) / static_cast<double>(m1), m1, m2};
}

double relative_error(double estimate, double reference) {
  if (reference == 0.0) throw std::invalid_argument("relative_error: zero reference");
  return std::abs(estimate / reference - 1.0);
}

BoundReport hoeffding_m1_bound(const ExpectedDegrees& ed, double eps) {
  const std::size_t n = ed.size();
  if (n < 2) throw std::invalid_argument("hoeffding_m1_bound: need n >= 2");
  if (!(eps >= 0.0)) throw std::invalid_argument("hoeffding_m1_bound: eps must be >= 0");
  const double nn = static_cast<double>(n);
  BoundReport r;
  r.n = n;
  r.eps = eps;
  r.delta_max = ed.delta_max;
  r.mu1 = ed.mu1;
  r.mu2 = ed.mu2;
  r.bound = 2.0 * std::exp(-eps * eps * ed.mu1 * ed.mu1 / (nn * (nn - 1.0)));
  return r;
}

BoundReport chung_radcliffe_bound(const ExpectedDegrees& ed, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("chung_radcliffe_bound: eps must lie in (0, 1)");
  }
  const double log_term = std::log(2.0 * static_cast<double>(ed.size()) / eps);
  BoundReport r;
  r.n = ed.size();
  r.eps = eps;
  r.delta_max = ed.delta_max;
  r.mu1 = ed.mu1;
  r.mu2 = ed.mu2;
  r.bound = 2.0 * std::sqrt(ed.delta_max * log_term);
  r.condition_holds = ed.delta_max > (4.0 / 9.0) * log_term;
  return r;
}

ConditionReport chunglu_condition(const ExpectedDegrees& ed) {
  ConditionReport c;
  c.lhs = lambda_p(ed);
  c.rhs = std::log(static_cast<double>(ed.size())) * std::sqrt(ed.delta_max);
  c.holds = c.lhs > c.rhs;
  c.margin = c.rhs > 0.0 ? c.lhs / c.rhs : INFINITY;
  return c;
}

double spectral_dominance_ratio(const ExpectedDegrees& ed) {
  const double ln = std::log(static_cast<double>(ed.size()));
  return lambda_p(ed) / (ln * ln);
}

SampleSizePlan sample_size(const DegreeStats& stats, double gap, double eps, double delta,
                           std::optional<std::uint64_t> t_star) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("sample_size: eps must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("sample_size: delta must lie in (0, 1)");
  }
  if (!(gap > 0.0)) throw std::invalid_argument("sample_size: spectral gap must be positive");
  if (stats.m2 == 0) throw std::invalid_argument("sample_size: graph has no edges");

  SampleSizePlan p;
  p.eps = eps;
  p.delta = delta;
  p.gap = gap;
  p.degree_factor = 6.0 * static_cast<double>(stats.m1) * static_cast<double>(stats.d_max) /
                    static_cast<double>(stats.m2);
  const double raw = p.degree_factor * std::log(1.0 / delta) / (gap * std::pow(eps, 1.5));
  // Strip accumulated rounding (e.g. ln(1/(1/e)) = 0.99999999999999989) before ceil.
  const double snapped = std::nearbyint(raw);
  const double value = std::abs(raw - snapped) <= 1e-9 * std::max(1.0, raw) ? snapped : raw;
  p.r = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(value)));
  const std::size_t n = stats.degrees.size();
  p.t_star = t_star ? *t_star
                    : static_cast<std::uint64_t>(std::ceil(std::log(static_cast<double>(
                          std::max<std::size_t>(n, 1)))));
  return p;
}

SampleSizePlan sample_size(const DegreeStats& stats, const SpectralGap& gap, double eps,
                           double delta, std::optional<std::uint64_t> t_star) {
  return sample_size(stats, gap.gap, eps, delta, t_star);
}

}  // namespace epithresh
