#include "epithresh/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "epithresh/estimators.hpp"
#include "epithresh/generators.hpp"
#include "epithresh/graph.hpp"
#include "epithresh/harness.hpp"
#include "epithresh/oracle_service.hpp"
#include "epithresh/sir.hpp"
#include "epithresh/spectral.hpp"
#include "epithresh/walker.hpp"

namespace epithresh {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_ratio_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw UsageError("--ratios: cannot parse \"" + tok + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--ratios: empty list");
  return out;
}

json bound_json(const BoundReport& b) {
  return {{"bound", b.bound},     {"condition_holds", b.condition_holds},
          {"n", b.n},             {"eps", b.eps},
          {"delta_max", b.delta_max}, {"mu1", b.mu1},
          {"mu2", b.mu2}};
}

json walk_json(const WalkReport& r) {
  return {{"estimate", r.estimate},
          {"r", r.r},
          {"total_steps", r.total_steps},
          {"total_queries", r.total_queries},
          {"degree_queries", r.degree_queries},
          {"neighbor_queries", r.neighbor_queries},
          {"distinct_nodes", r.distinct_nodes},
          {"start", r.start},
          {"seed", r.seed}};
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Epidemic-threshold estimation: spectral radius, degree moments, random-walk sampling"};
  app.name("epithresh");
  app.require_subcommand(1);
  app.fallthrough(false);

  std::function<void()> action;

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a Chung-Lu power-law or preferential-attachment graph");
  std::string gen_model = "chung-lu";
  std::size_t gen_n = 1000;
  double gen_beta = 2.5;
  double gen_dmin = 1.0;
  std::size_t gen_k = 5;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--model", gen_model, "chung-lu | pa")->check(CLI::IsMember({"chung-lu", "pa"}));
  gen->add_option("--n", gen_n, "Number of nodes")->required();
  gen->add_option("--beta", gen_beta, "Power-law exponent (chung-lu)");
  gen->add_option("--dmin", gen_dmin, "Minimum expected degree (chung-lu)");
  gen->add_option("--edges-per-node", gen_k, "Edges added per arriving node (pa)");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--out", gen_out, "Output edge list; a .json sidecar is written next to it")->required();
  gen->callback([&] {
    action = [&] {
      SyntheticConfig cfg;
      cfg.model = parse_model(gen_model);
      cfg.n = gen_n;
      cfg.beta = gen_beta;
      cfg.d_min = gen_dmin;
      cfg.edges_per_node = gen_k;
      cfg.seed = gen_seed;
      json side;
      side["model"] = gen_model;
      side["n"] = gen_n;
      side["seed"] = gen_seed;
      Graph g;
      if (cfg.model == GraphModel::kChungLu) {
        const auto pl = power_law_expected_degrees({cfg.n, cfg.beta, cfg.d_min}, {cfg.seed, 0});
        auto sample = chung_lu_sample_fast(pl.degrees, {cfg.seed, 1});
        side["parameterization"] = "P(i,j)=delta_i*delta_j/S";
        side["beta"] = gen_beta;
        side["dmin"] = gen_dmin;
        side["S"] = pl.degrees.S;
        side["delta_max"] = pl.degrees.delta_max;
        side["clamp_cap"] = pl.cap;
        side["clamp_count"] = pl.clamped;
        side["clamped_pairs"] = sample.clamped_pairs;
        if (sample.clamped_pairs > 0) {
          err << "warning: " << sample.clamped_pairs << " pair probabilities clamped to 1\n";
        }
        g = std::move(sample.graph);
      } else {
        g = preferential_attachment(cfg.n, cfg.edges_per_node, {cfg.seed, 0});
        side["edges_per_node"] = gen_k;
        side["clamp_count"] = 0;
      }
      side["m"] = g.edge_count();
      write_edge_list(g, gen_out);
      std::ofstream f(gen_out + ".json");
      f << side.dump(2) << '\n';
      out << side.dump() << '\n';
    };
  });

  // exact
  auto* exact = app.add_subcommand("exact", "Spectral radius (and optionally spectral gap) by power iteration");
  std::string exact_in;
  bool exact_gap = false;
  double exact_tol = 1e-10;
  std::uint64_t exact_iters = 100000;
  exact->add_option("--in", exact_in, "Edge list")->required();
  exact->add_flag("--gap", exact_gap, "Also compute lambda2 / spectral gap of the largest component");
  exact->add_option("--tol", exact_tol, "Relative tolerance");
  exact->add_option("--max-iters", exact_iters, "Iteration cap");
  exact->callback([&] {
    action = [&] {
      const Graph g = read_edge_list(exact_in);
      PowerOptions po{exact_tol, exact_iters, 0};
      const auto sr = spectral_radius(g, po);
      json j;
      j["lambda"] = sr.value;
      j["iterations"] = sr.iterations;
      j["converged"] = sr.converged;
      j["residual"] = sr.residual;
      if (exact_gap) {
        const auto lcc = largest_component(g);
        const auto gap = spectral_gap(lcc.graph, po);
        j["lambda2"] = gap.lambda2;
        j["gap"] = gap.gap;
        j["gap_iterations"] = gap.iterations;
        j["gap_converged"] = gap.converged;
        j["gap_component_nodes"] = lcc.graph.node_count();
      }
      out << j.dump() << '\n';
      if (!sr.converged) err << "warning: power iteration did not converge\n";
    };
  });

  // estimate t1
  auto* estimate = app.add_subcommand("estimate", "Closed-form estimators");
  estimate->require_subcommand(1);
  auto* est_t1 = estimate->add_subcommand("t1", "Degree-moment ratio T1 = m2 / m1");
  std::string t1_in;
  est_t1->add_option("--in", t1_in, "Edge list")->required();
  est_t1->callback([&] {
    action = [&] {
      const auto est = t1_estimate(read_edge_list(t1_in));
      out << json{{"t1", est.t1}, {"m1", est.m1}, {"m2", est.m2}}.dump() << '\n';
    };
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Concentration bounds and walk sample-size plan");
  std::string b_in;
  double b_eps = 0.1;
  double b_delta = 0.1;
  bounds->add_option("--in", b_in, "Edge list")->required();
  bounds->add_option("--eps", b_eps, "Relative accuracy / bound parameter");
  bounds->add_option("--delta", b_delta, "Failure probability for the sample-size plan");
  bounds->callback([&] {
    action = [&] {
      const Graph g = read_edge_list(b_in);
      const auto stats = degree_stats(g);
      std::vector<double> delta;
      for (auto d : stats.degrees) {
        if (d > 0) delta.push_back(static_cast<double>(d));
      }
      if (delta.empty()) throw std::runtime_error("bounds: graph has no edges");
      const auto ed = make_expected_degrees(std::move(delta));
      json j;
      j["delta_source"] = "observed degrees of non-isolated nodes";
      j["lambda_p"] = lambda_p(ed);
      j["hoeffding_m1"] = bound_json(hoeffding_m1_bound(ed, b_eps));
      j["chung_radcliffe"] = bound_json(chung_radcliffe_bound(ed, b_eps));
      const auto cond = chunglu_condition(ed);
      j["chunglu_condition"] = {{"holds", cond.holds}, {"lhs", cond.lhs}, {"rhs", cond.rhs},
                                {"margin", cond.margin}};
      j["dominance_ratio_ln2n"] = spectral_dominance_ratio(ed);
      const auto lcc = largest_component(g);
      const auto gap = spectral_gap(lcc.graph, PowerOptions{1e-8, 100000, 0});
      const auto plan = sample_size(stats, gap, b_eps, b_delta);
      j["sample_size"] = {{"r", plan.r},       {"t_star", plan.t_star},
                          {"eps", plan.eps},   {"delta", plan.delta},
                          {"gap", plan.gap},   {"degree_factor", plan.degree_factor},
                          {"gap_converged", gap.converged}};
      out << j.dump() << '\n';
    };
  });

  // walk
  auto* walk = app.add_subcommand("walk", "Random-walk estimate T2 over a local graph or a remote oracle");
  std::string w_in;
  std::string w_remote;
  std::uint64_t w_r = 0;
  std::optional<std::uint64_t> w_tstar;
  std::uint64_t w_thin = 10;
  std::uint64_t w_seed = 0;
  NodeId w_start = 0;
  double w_eps = 0.1;
  double w_delta = 0.1;
  auto* in_opt = walk->add_option("--in", w_in, "Edge list (walks its largest component when --eps/--delta plan r)");
  auto* remote_opt = walk->add_option("--remote", w_remote, "host:port of an oracle service");
  in_opt->excludes(remote_opt);
  walk->add_option("--r", w_r, "Number of degree samples (0: plan from --eps/--delta)");
  walk->add_option("--tstar", w_tstar, "Burn-in steps (default ceil(ln n))");
  walk->add_option("--thin", w_thin, "Steps between samples");
  walk->add_option("--seed", w_seed, "Random seed");
  walk->add_option("--start", w_start, "Start node");
  walk->add_option("--eps", w_eps, "Target relative accuracy for auto-planned r");
  walk->add_option("--delta", w_delta, "Failure probability for auto-planned r");
  walk->callback([&] {
    action = [&] {
      if (w_in.empty() && w_remote.empty()) throw UsageError("walk: one of --in or --remote is required");
      WalkConfig cfg;
      cfg.thin = w_thin;
      cfg.seed = w_seed;
      cfg.start = w_start;
      json j;
      WalkReport rep;
      if (!w_remote.empty()) {
        if (w_r == 0) throw UsageError("walk: --remote needs an explicit --r (planning requires the full graph)");
        RemoteOracle oracle(parse_address(w_remote));
        cfg.r = w_r;
        cfg.t_star = w_tstar ? *w_tstar
                             : static_cast<std::uint64_t>(std::ceil(std::log(
                                   static_cast<double>(std::max<std::size_t>(oracle.node_count(), 1)))));
        rep = random_walk_estimate(oracle, cfg);
      } else {
        const Graph g = read_edge_list(w_in);
        const auto stats = degree_stats(g);
        cfg.r = w_r;
        cfg.t_star = w_tstar ? *w_tstar
                             : static_cast<std::uint64_t>(std::ceil(std::log(
                                   static_cast<double>(std::max<std::size_t>(g.node_count(), 1)))));
        if (w_r == 0) {
          const auto lcc = largest_component(g);
          const auto gap = spectral_gap(lcc.graph, PowerOptions{1e-8, 100000, 0});
          const auto plan = sample_size(degree_stats(lcc.graph), gap, w_eps, w_delta, w_tstar);
          cfg.r = plan.r;
          cfg.t_star = plan.t_star;
          j["plan"] = {{"r", plan.r}, {"t_star", plan.t_star}, {"gap", plan.gap},
                       {"eps", w_eps}, {"delta", w_delta}};
        }
        LocalOracle oracle(g);
        rep = random_walk_estimate(oracle, cfg);
        j["t1"] = t1_estimate(stats).t1;
        if (!bipartition(g).empty()) err << "warning: graph is bipartite; burn-in cannot reach pi\n";
      }
      j["t_star"] = cfg.t_star;
      j["thin"] = cfg.thin;
      j["report"] = walk_json(rep);
      out << j.dump() << '\n';
    };
  });

  // serve
  auto* serve = app.add_subcommand("serve", "Serve a graph over the line-based oracle protocol");
  std::string s_in;
  std::string s_addr = "127.0.0.1:7777";
  serve->add_option("--in", s_in, "Edge list")->required();
  serve->add_option("--addr", s_addr, "Bind address host:port (port 0 picks a free port)");
  serve->callback([&] {
    action = [&] {
      const Graph g = read_edge_list(s_in);
      const Address a = parse_address(s_addr);
      OracleServer server(g, a);
      out << "listening on " << a.host << ":" << server.port() << std::endl;
      server.wait();
    };
  });

  // sir
  auto* sir = app.add_subcommand("sir", "Simulate discrete-time SIR from one initial node");
  std::string sir_in;
  std::string sir_out;
  double sir_beta = 0.1;
  double sir_mu = 0.2;
  std::uint64_t sir_seed = 0;
  NodeId sir_init = 0;
  std::uint64_t sir_max = 0;
  sir->add_option("--in", sir_in, "Edge list")->required();
  sir->add_option("--beta", sir_beta, "Per-contact infection probability per step");
  sir->add_option("--mu", sir_mu, "Recovery probability per step");
  sir->add_option("--seed", sir_seed, "Random seed");
  sir->add_option("--init", sir_init, "Initially infected node");
  sir->add_option("--max-steps", sir_max, "Step cap (0: 10 n)");
  sir->add_option("--out", sir_out, "Trajectory CSV (default stdout)");
  sir->callback([&] {
    action = [&] {
      const Graph g = read_edge_list(sir_in);
      SirParams p;
      p.beta = sir_beta;
      p.mu = sir_mu;
      p.seed = sir_seed;
      p.initial_infected = {sir_init};
      p.max_steps = sir_max;
      write_text(sir_out, sir_trajectory_csv(sir_simulate(g, p), p), out);
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "SIR final size across beta/mu multiples of 1/lambda(A)");
  std::string sw_in;
  std::string sw_out;
  std::string sw_ratios = "0.25,0.5,0.75,1,1.5,2,3,4";
  std::size_t sw_reps = 50;
  double sw_mu = 0.2;
  std::uint64_t sw_seed = 0;
  std::optional<double> sw_lambda;
  sweep->add_option("--in", sw_in, "Edge list")->required();
  sweep->add_option("--ratios", sw_ratios, "Comma-separated multipliers of 1/lambda(A)");
  sweep->add_option("--reps", sw_reps, "Replications per ratio");
  sweep->add_option("--mu", sw_mu, "Recovery probability per step");
  sweep->add_option("--seed", sw_seed, "Random seed");
  sweep->add_option("--lambda", sw_lambda, "Spectral radius (computed when omitted)");
  sweep->add_option("--out", sw_out, "Summary CSV (default stdout)");
  sweep->callback([&] {
    action = [&] {
      const Graph g = read_edge_list(sw_in);
      const auto ratios = parse_ratio_list(sw_ratios);
      SweepOptions opt;
      opt.mu = sw_mu;
      opt.reps = sw_reps;
      opt.seed = sw_seed;
      opt.lambda = sw_lambda;
      write_text(sw_out, sweep_csv(threshold_sweep(g, ratios, opt), opt), out);
    };
  });

  // bench-t1
  auto* bench = app.add_subcommand("bench-t1", "lambda(A) vs T1 on product-form random graphs");
  T1BenchmarkConfig bcfg;
  std::string b_dir = "bench-t1-out";
  bench->add_option("--n", bcfg.n, "Nodes per graph");
  bench->add_option("--reps", bcfg.reps, "Graphs to generate");
  bench->add_option("--seed", bcfg.seed, "Random seed");
  bench->add_option("--theta-lo", bcfg.theta_lo, "Lower end of the theta range");
  bench->add_option("--theta-hi", bcfg.theta_hi, "Upper end of the theta range");
  bench->add_option("--out-dir", b_dir, "Output directory");
  bench->callback([&] {
    action = [&] {
      const auto res = run_t1_benchmark(bcfg);
      write_t1_benchmark_outputs(res, b_dir);
      out << json{{"n", bcfg.n},
                  {"reps", bcfg.reps},
                  {"mean_e1", res.summary.mean_e1},
                  {"sd_e1", res.summary.sd_e1},
                  {"mean_time_lambda", res.summary.mean_runtime_lambda},
                  {"mean_time_t1", res.summary.mean_runtime_t1},
                  {"out_dir", b_dir}}
                 .dump()
          << '\n';
    };
  });

  // experiment
  auto* expt = app.add_subcommand("experiment", "Synthetic graph + replicated walks: error vs nodes seen");
  SyntheticConfig ecfg;
  std::string e_model = "chung-lu";
  std::string e_dir = "experiment-out";
  std::optional<std::uint64_t> e_tstar;
  expt->add_option("--model", e_model, "chung-lu | pa")->check(CLI::IsMember({"chung-lu", "pa"}));
  expt->add_option("--n", ecfg.n, "Nodes");
  expt->add_option("--beta", ecfg.beta, "Power-law exponent (chung-lu)");
  expt->add_option("--dmin", ecfg.d_min, "Minimum expected degree (chung-lu)");
  expt->add_option("--edges-per-node", ecfg.edges_per_node, "Edges per arriving node (pa)");
  expt->add_option("--seed", ecfg.seed, "Random seed");
  expt->add_option("--reps", ecfg.reps, "Walk replications");
  expt->add_option("--thin", ecfg.thin, "Steps between samples");
  expt->add_option("--tstar", e_tstar, "Burn-in (default ceil(10 ln n))");
  expt->add_option("--out-dir", e_dir, "Output directory");
  expt->callback([&] {
    action = [&] {
      ecfg.model = parse_model(e_model);
      ecfg.t_star = e_tstar;
      const auto res = run_synthetic_experiment(ecfg);
      write_synthetic_outputs(res, e_dir);
      out << json{{"model", e_model},
                  {"n", res.full.n},
                  {"m", res.full.m},
                  {"lambda", res.full.lambda},
                  {"t1", res.full.t1},
                  {"e1", res.full.e1},
                  {"final_mean_eps_T1T2", res.curve.points.back().mean_eps_t1_t2},
                  {"final_mean_eps_lambdaT2", res.curve.points.back().mean_eps_lambda_t2},
                  {"out_dir", e_dir}}
                 .dump()
          << '\n';
    };
  });

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("epithresh");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    err << "run 'epithresh --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (action) action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace epithresh
