#include "epithresh/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "epithresh/estimators.hpp"
#include "epithresh/generators.hpp"
#include "epithresh/rng.hpp"
#include "epithresh/spectral.hpp"

namespace epithresh {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

}  // namespace

std::size_t default_thread_count() {
  if (const char* env = std::getenv("EPITHRESH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  std::size_t threads) {
  if (threads == 0) threads = default_thread_count();
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::string records_csv(const std::vector<ExperimentRecord>& records, const CsvOptions& opt) {
  std::ostringstream out;
  for (const auto& c : opt.comments) out << "# " << c << '\n';
  out << "seed,n,m,lambdaA,t1,t2,e1,eps_T1T2,eps_lambdaT2,nodes_seen";
  if (opt.include_timing) out << ",runtime_lambda,runtime_t1,runtime_t2";
  out << '\n';
  for (const auto& r : records) {
    out << r.seed << ',' << r.n << ',' << r.m << ',' << fmt(r.lambda_a) << ',' << fmt(r.t1) << ','
        << (r.t2 ? fmt(*r.t2) : "") << ',' << fmt(r.e1) << ','
        << (r.eps_t1_t2 ? fmt(*r.eps_t1_t2) : "") << ','
        << (r.eps_lambda_t2 ? fmt(*r.eps_lambda_t2) : "") << ','
        << (r.nodes_seen ? std::to_string(*r.nodes_seen) : "");
    if (opt.include_timing) {
      out << ',' << fmt(r.runtime_lambda) << ',' << fmt(r.runtime_t1) << ',' << fmt(r.runtime_t2);
    }
    out << '\n';
  }
  return out.str();
}

Summary summarize(const std::vector<ExperimentRecord>& records) {
  Summary s;
  s.count = records.size();
  if (records.empty()) return s;
  const double k = static_cast<double>(records.size());
  for (const auto& r : records) {
    s.mean_e1 += r.e1;
    s.mean_runtime_lambda += r.runtime_lambda;
    s.mean_runtime_t1 += r.runtime_t1;
  }
  s.mean_e1 /= k;
  s.mean_runtime_lambda /= k;
  s.mean_runtime_t1 /= k;
  double ss = 0.0;
  for (const auto& r : records) ss += (r.e1 - s.mean_e1) * (r.e1 - s.mean_e1);
  s.sd_e1 = records.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
  return s;
}

T1BenchmarkResult run_t1_benchmark(const T1BenchmarkConfig& cfg) {
  T1BenchmarkResult res;
  res.config = cfg;
  res.records.resize(cfg.reps);
  parallel_for(
      cfg.reps,
      [&](std::size_t rep) {
        const std::uint64_t seed = derive_seed(cfg.seed, rep);
        const auto sample = product_form_sample(cfg.n, cfg.theta_lo, cfg.theta_hi, {seed, 0});
        const Graph& g = sample.sample.graph;
        ExperimentRecord rec;
        rec.seed = seed;
        rec.n = g.node_count();
        rec.m = g.edge_count();

        auto t0 = Clock::now();
        rec.lambda_a = spectral_radius(g, PowerOptions{.seed = seed}).value;
        rec.runtime_lambda = seconds_since(t0);

        t0 = Clock::now();
        rec.t1 = t1_estimate(g).t1;
        rec.runtime_t1 = seconds_since(t0);

        rec.e1 = relative_error(rec.t1, rec.lambda_a);
        res.records[rep] = rec;
      },
      cfg.threads);
  res.summary = summarize(res.records);
  return res;
}

GraphModel parse_model(std::string_view name) {
  if (name == "chung-lu") return GraphModel::kChungLu;
  if (name == "pa") return GraphModel::kPreferentialAttachment;
  throw std::invalid_argument("unknown model \"" + std::string(name) + "\" (chung-lu|pa)");
}

std::string model_name(GraphModel m) {
  return m == GraphModel::kChungLu ? "chung-lu" : "pa";
}

std::vector<std::uint64_t> walk_seeds(std::uint64_t seed, std::size_t reps) {
  std::vector<std::uint64_t> seeds(reps);
  for (std::size_t i = 0; i < reps; ++i) seeds[i] = derive_seed(seed ^ 0x77a1c0deULL, i);
  return seeds;
}

Graph generate_model_graph(const SyntheticConfig& cfg, std::uint64_t* clamped) {
  if (cfg.model == GraphModel::kChungLu) {
    const auto pl = power_law_expected_degrees({cfg.n, cfg.beta, cfg.d_min}, {cfg.seed, 0});
    auto sample = chung_lu_sample_fast(pl.degrees, {cfg.seed, 1});
    if (clamped) *clamped = pl.clamped;
    return std::move(sample.graph);
  }
  if (clamped) *clamped = 0;
  return preferential_attachment(cfg.n, cfg.edges_per_node, {cfg.seed, 0});
}

SyntheticResult run_synthetic_experiment(const SyntheticConfig& cfg) {
  if (cfg.reps == 0) throw std::invalid_argument("experiment: reps must be positive");
  SyntheticResult res;
  res.config = cfg;
  const Graph g = generate_model_graph(cfg, &res.clamped);

  auto t0 = Clock::now();
  const double lambda_full = spectral_radius(g, PowerOptions{.seed = cfg.seed}).value;
  res.runtime_lambda = seconds_since(t0);
  t0 = Clock::now();
  const double t1_full = t1_estimate(g).t1;
  res.runtime_t1 = seconds_since(t0);
  res.full = {g.node_count(), g.edge_count(), lambda_full, t1_full,
              relative_error(t1_full, lambda_full)};

  const auto lcc = largest_component(g);
  const Graph& h = lcc.graph;
  CurveReference ref;
  ref.t1 = t1_estimate(h).t1;
  ref.lambda = spectral_radius(h, PowerOptions{.seed = cfg.seed}).value;
  ref.n = h.node_count();
  ref.bipartite = !bipartition(h).empty();
  res.component = {h.node_count(), h.edge_count(), ref.lambda, ref.t1,
                   relative_error(ref.t1, ref.lambda)};

  res.t_star = cfg.t_star ? *cfg.t_star
                          : static_cast<std::uint64_t>(
                                std::ceil(10.0 * std::log(static_cast<double>(h.node_count()))));
  std::vector<std::uint64_t> budgets;
  for (double f : cfg.checkpoint_fractions) {
    const auto b = static_cast<std::uint64_t>(std::ceil(f * static_cast<double>(g.node_count())));
    budgets.push_back(std::max<std::uint64_t>(1, std::min<std::uint64_t>(b, h.node_count())));
  }
  const auto seeds = walk_seeds(cfg.seed, cfg.reps);
  LocalOracle oracle(h);
  CurveOptions copt;
  copt.t_star = res.t_star;
  copt.thin = cfg.thin;
  t0 = Clock::now();
  res.curve = error_curve(oracle, ref, seeds, budgets, copt);
  res.runtime_walks = seconds_since(t0);

  for (std::size_t s = 0; s < seeds.size(); ++s) {
    for (const auto& pt : res.curve.points) {
      ExperimentRecord rec;
      rec.seed = seeds[s];
      rec.n = h.node_count();
      rec.m = h.edge_count();
      rec.lambda_a = ref.lambda;
      rec.t1 = ref.t1;
      rec.e1 = res.component.e1;
      rec.t2 = pt.estimates[s];
      rec.eps_t1_t2 = std::abs(*rec.t2 - ref.t1) / ref.t1;
      rec.eps_lambda_t2 = std::abs(*rec.t2 - ref.lambda) / ref.lambda;
      rec.nodes_seen = pt.budget;
      rec.runtime_lambda = res.runtime_lambda;
      rec.runtime_t1 = res.runtime_t1;
      rec.runtime_t2 = res.runtime_walks / static_cast<double>(seeds.size());
      res.records.push_back(rec);
    }
  }
  return res;
}

std::string synthetic_config_comments(const SyntheticConfig& cfg) {
  std::ostringstream s;
  s << "experiment=synthetic model=" << model_name(cfg.model) << " n=" << cfg.n;
  if (cfg.model == GraphModel::kChungLu) {
    s << " parameterization=chung-lu(P=delta_i*delta_j/S) beta=" << fmt(cfg.beta)
      << " d_min=" << fmt(cfg.d_min);
  } else {
    s << " edges_per_node=" << cfg.edges_per_node;
  }
  s << " seed=" << cfg.seed << " reps=" << cfg.reps << " thin=" << cfg.thin;
  return s.str();
}

void write_synthetic_outputs(const SyntheticResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> comments = {synthetic_config_comments(r.config),
                                       "t_star=" + std::to_string(r.t_star) +
                                           " walked=largest_component"};
  std::string seeds = "walk_seeds=";
  for (std::size_t i = 0; i < r.curve.seeds.size(); ++i) {
    seeds += (i ? ";" : "") + std::to_string(r.curve.seeds[i]);
  }
  comments.push_back(seeds);
  write_file(dir / "records.csv", records_csv(r.records, {false, comments}));

  std::string curve = "# " + comments[0] + "\n# " + comments[1] + "\n" + error_curve_csv(r.curve);
  write_file(dir / "curve.csv", curve);

  nlohmann::ordered_json j;
  j["experiment"] = "synthetic";
  j["model"] = model_name(r.config.model);
  j["parameterization"] = r.config.model == GraphModel::kChungLu
                              ? "chung-lu P(i,j)=delta_i*delta_j/S, power-law delta"
                              : "preferential attachment, undirected";
  j["config"] = {{"n", r.config.n},
                 {"beta", r.config.beta},
                 {"d_min", r.config.d_min},
                 {"edges_per_node", r.config.edges_per_node},
                 {"seed", r.config.seed},
                 {"reps", r.config.reps},
                 {"thin", r.config.thin},
                 {"t_star", r.t_star},
                 {"checkpoint_fractions", r.config.checkpoint_fractions}};
  j["clamped"] = r.clamped;
  auto summary_json = [](const GraphSummary& s) {
    return nlohmann::ordered_json{{"n", s.n}, {"m", s.m}, {"lambda", s.lambda}, {"t1", s.t1},
                                  {"e1", s.e1}};
  };
  j["full_graph"] = summary_json(r.full);
  j["largest_component"] = summary_json(r.component);
  j["walk_seeds"] = r.curve.seeds;
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : r.curve.points) {
    pts.push_back({{"budget", p.budget},
                   {"mean_eps_T1T2", p.mean_eps_t1_t2},
                   {"mean_eps_lambdaT2", p.mean_eps_lambda_t2},
                   {"mean_samples", p.mean_samples},
                   {"reached", p.reached}});
  }
  j["curve"] = pts;
  write_file(dir / "summary.json", j.dump(2) + "\n");

  std::ostringstream timing;
  timing << "runtime_lambda,runtime_t1,runtime_walks\n"
         << fmt(r.runtime_lambda) << ',' << fmt(r.runtime_t1) << ',' << fmt(r.runtime_walks) << '\n';
  write_file(dir / "timings.csv", timing.str());
}

void write_t1_benchmark_outputs(const T1BenchmarkResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& c = r.config;
  std::vector<std::string> comments = {
      "experiment=t1-benchmark parameterization=product-form(P=theta_i*theta_j) n=" +
          std::to_string(c.n) + " reps=" + std::to_string(c.reps) + " seed=" + std::to_string(c.seed) +
          " theta~U(" + fmt(c.theta_lo) + "," + fmt(c.theta_hi) + ")"};
  write_file(dir / "records.csv", records_csv(r.records, {false, comments}));
  write_file(dir / "timings.csv", records_csv(r.records, {true, comments}));

  nlohmann::ordered_json j;
  j["experiment"] = "t1-benchmark";
  j["parameterization"] = "product form P(i,j)=theta_i*theta_j";
  j["config"] = {{"n", c.n}, {"reps", c.reps}, {"seed", c.seed},
                 {"theta_lo", c.theta_lo}, {"theta_hi", c.theta_hi}};
  j["mean_e1"] = r.summary.mean_e1;
  j["sd_e1"] = r.summary.sd_e1;
  write_file(dir / "summary.json", j.dump(2) + "\n");
}

}  // namespace epithresh
