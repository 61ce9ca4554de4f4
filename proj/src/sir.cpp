#include "epithresh/sir.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "epithresh/rng.hpp"
#include "epithresh/spectral.hpp"

namespace epithresh {

namespace {

enum class State : std::uint8_t { kS, kI, kR };

}  // namespace

SirTrajectory sir_simulate(const Graph& g, const SirParams& p) {
  const std::size_t n = g.node_count();
  if (!(p.beta >= 0.0 && p.beta <= 1.0)) throw std::invalid_argument("sir: beta must lie in [0, 1]");
  if (!(p.mu > 0.0 && p.mu <= 1.0)) throw std::invalid_argument("sir: mu must lie in (0, 1]");
  if (p.initial_infected.empty()) throw std::invalid_argument("sir: initial infected set is empty");

  std::vector<State> state(n, State::kS);
  std::vector<NodeId> infected;
  for (NodeId v : p.initial_infected) {
    if (v >= n) throw std::invalid_argument("sir: initial node " + std::to_string(v) + " out of range");
    if (state[v] == State::kS) {
      state[v] = State::kI;
      infected.push_back(v);
    }
  }
  const std::uint64_t max_steps = p.max_steps ? p.max_steps : 10 * static_cast<std::uint64_t>(n);
  Engine eng = make_engine(p.seed, 0x51e);

  SirTrajectory t;
  std::uint64_t s = n - infected.size();
  std::uint64_t i = infected.size();
  std::uint64_t r = 0;
  auto push = [&] {
    t.S.push_back(s);
    t.I.push_back(i);
    t.R.push_back(r);
  };
  push();

  // Infected-neighbor counts for susceptible nodes touched this step.
  std::vector<std::uint32_t> pressure(n, 0);
  std::vector<NodeId> exposed;
  const double log_escape = p.beta < 1.0 ? std::log1p(-p.beta) : 0.0;
  while (i > 0 && t.steps < max_steps) {
    exposed.clear();
    for (NodeId v : infected) {
      for (NodeId w : g.neighbors(v)) {
        if (state[w] == State::kS && pressure[w]++ == 0) exposed.push_back(w);
      }
    }
    // Sorted so the draw order does not depend on infected-list order.
    std::sort(exposed.begin(), exposed.end());
    std::vector<NodeId> next_infected;
    for (NodeId w : exposed) {
      const double p_inf = p.beta >= 1.0 ? 1.0 : -std::expm1(log_escape * pressure[w]);
      pressure[w] = 0;
      if (uniform_open(eng) < p_inf) next_infected.push_back(w);
    }
    for (NodeId v : infected) {
      if (uniform_open(eng) < p.mu) {
        state[v] = State::kR;
        ++r;
        --i;
      } else {
        next_infected.push_back(v);
      }
    }
    std::size_t fresh = 0;
    for (NodeId w : next_infected) {
      if (state[w] == State::kS) {
        state[w] = State::kI;
        ++fresh;
      }
    }
    s -= fresh;
    i += fresh;
    infected.swap(next_infected);
    ++t.steps;
    push();
  }
  t.final_size = r + i;
  return t;
}

std::string sir_trajectory_csv(const SirTrajectory& t, const SirParams& p) {
  std::ostringstream out;
  out.precision(10);
  out << "# model: " << kSirDiscretization << '\n';
  out << "# beta=" << p.beta << " mu=" << p.mu << " seed=" << p.seed << " init=";
  for (std::size_t k = 0; k < p.initial_infected.size(); ++k) {
    out << (k ? ";" : "") << p.initial_infected[k];
  }
  out << " final_size=" << t.final_size << '\n';
  out << "t,S,I,R\n";
  for (std::size_t k = 0; k < t.S.size(); ++k) {
    out << k << ',' << t.S[k] << ',' << t.I[k] << ',' << t.R[k] << '\n';
  }
  return out.str();
}

SweepResult threshold_sweep(const Graph& g, std::span<const double> ratios,
                            const SweepOptions& opt) {
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("sweep: empty graph");
  SweepResult res;
  res.mu = opt.mu;
  res.lambda = opt.lambda ? *opt.lambda : spectral_radius(g).value;
  if (!(res.lambda > 0.0)) throw std::invalid_argument("sweep: spectral radius must be positive");
  for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
    SweepRow row;
    row.ratio = ratios[ri];
    row.beta = std::min(1.0, ratios[ri] * opt.mu / res.lambda);
    for (std::size_t rep = 0; rep < opt.reps; ++rep) {
      const std::uint64_t rep_seed = derive_seed(opt.seed, ri * 1000003ULL + rep);
      Engine pick = make_engine(rep_seed, 1);
      SirParams p;
      p.beta = row.beta;
      p.mu = opt.mu;
      p.seed = rep_seed;
      p.initial_infected = {static_cast<NodeId>(uniform_index(pick, n))};
      const auto traj = sir_simulate(g, p);
      row.final_fractions.push_back(static_cast<double>(traj.final_size) / static_cast<double>(n));
    }
    const double k = static_cast<double>(row.final_fractions.size());
    if (k > 0) {
      row.mean_final_fraction =
          std::accumulate(row.final_fractions.begin(), row.final_fractions.end(), 0.0) / k;
      double ss = 0.0;
      for (double f : row.final_fractions) ss += (f - row.mean_final_fraction) * (f - row.mean_final_fraction);
      row.sd_final_fraction = k > 1 ? std::sqrt(ss / (k - 1)) : 0.0;
    }
    res.rows.push_back(std::move(row));
  }
  return res;
}

std::string sweep_csv(const SweepResult& r, const SweepOptions& opt) {
  std::ostringstream out;
  out.precision(10);
  out << "# model: " << kSirDiscretization << '\n';
  out << "# lambda=" << r.lambda << " mu=" << r.mu << " reps=" << opt.reps << " seed=" << opt.seed
      << '\n';
  out << "ratio,beta,mean_final_fraction,sd_final_fraction\n";
  for (const auto& row : r.rows) {
    out << row.ratio << ',' << row.beta << ',' << row.mean_final_fraction << ','
        << row.sd_final_fraction << '\n';
  }
  return out.str();
}

namespace {

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rk(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rk[idx[k]] = avg;
    i = j + 1;
  }
  return rk;
}

}  // namespace

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman: need two equal-length samples");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double k = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / k;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / k;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace epithresh
