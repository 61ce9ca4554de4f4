#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "epithresh/harness.hpp"
#include "json.hpp"

using namespace epithresh;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Column `col` of every data row, skipping comments and the header.
std::vector<double> csv_column(const std::string& text, const std::string& col) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (header.empty()) {
      header = cells;
      continue;
    }
    const auto it = std::find(header.begin(), header.end(), col);
    out.push_back(std::stod(cells.at(std::size_t(it - header.begin()))));
  }
  return out;
}

}  // namespace

TEST_CASE("parallel_for writes by index") {
  std::vector<int> v(100, 0);
  parallel_for(100, [&](std::size_t i) { v[i] = int(i * i); }, 4);
  for (int i = 0; i < 100; ++i) CHECK(v[std::size_t(i)] == i * i);
  CHECK_THROWS(parallel_for(10, [](std::size_t i) {
    if (i == 7) throw std::runtime_error("boom");
  }, 3));
}

TEST_CASE("summary is recomputable from records") {
  T1BenchmarkConfig cfg;
  cfg.n = 400;
  cfg.reps = 6;
  cfg.seed = 4;
  const auto r = run_t1_benchmark(cfg);
  const auto dir = fs::temp_directory_path() / "epithresh_bench_test";
  fs::remove_all(dir);
  write_t1_benchmark_outputs(r, dir);
  const auto e1 = csv_column(slurp(dir / "records.csv"), "e1");
  REQUIRE(e1.size() == 6);
  double mean = 0;
  for (double x : e1) mean += x;
  mean /= 6;
  double ss = 0;
  for (double x : e1) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / 5);
  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(std::abs(j["mean_e1"].get<double>() - mean) < 1e-12);
  CHECK(std::abs(j["sd_e1"].get<double>() - sd) < 1e-12);
  CHECK(slurp(dir / "records.csv").find("product-form") != std::string::npos);
  CHECK(slurp(dir / "timings.csv").find("runtime_lambda") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("t1 benchmark is deterministic") {
  T1BenchmarkConfig cfg;
  cfg.n = 300;
  cfg.reps = 1;
  cfg.seed = 9;
  const auto a = run_t1_benchmark(cfg);
  const auto b = run_t1_benchmark(cfg);
  CHECK(records_csv(a.records, {}) == records_csv(b.records, {}));
}

TEST_CASE("synthetic experiment records") {
  SyntheticConfig cfg;
  cfg.model = GraphModel::kPreferentialAttachment;
  cfg.n = 500;
  cfg.edges_per_node = 3;
  cfg.reps = 3;
  cfg.seed = 5;
  const auto r = run_synthetic_experiment(cfg);
  CHECK(r.full.m == 3 * (500 - 4) + 6);
  CHECK(r.records.size() == 3 * cfg.checkpoint_fractions.size());
  CHECK(r.t_star == std::uint64_t(std::ceil(10 * std::log(500.0))));
  for (const auto& rec : r.records) {
    CHECK(*rec.eps_t1_t2 >= 0.0);
    CHECK(*rec.eps_lambda_t2 >= 0.0);
    CHECK(rec.e1 >= 0.0);
  }
  CHECK(r.curve.points.front().budget == 5);
  CHECK(r.curve.points.back().budget == 500);
  CHECK(parse_model("pa") == GraphModel::kPreferentialAttachment);
  CHECK_THROWS(parse_model("er"));
}
