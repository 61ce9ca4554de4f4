#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "epithresh/cli.hpp"
#include "json.hpp"

using namespace epithresh;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  for (const char* sub : {"generate", "exact", "estimate", "bounds", "walk", "serve", "sir", "sweep",
                          "bench-t1", "experiment"}) {
    const auto r = run({sub, "--help"});
    CHECK_MESSAGE(r.code == kExitOk, sub);
    CHECK(r.out.find("--") != std::string::npos);
  }
  const auto bad = run({"exact", "--in", "x.txt", "--bogus"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("--bogus") != std::string::npos);
  CHECK(run({"exact", "--in", "/nonexistent/graph.txt"}).code == kExitRuntime);
}

TEST_CASE("generate, exact, estimate, bounds, walk") {
  TempDir dir("epithresh_cli_test");
  const auto g = (dir.path / "g.txt").string();
  REQUIRE(run({"generate", "--model", "pa", "--n", "300", "--edges-per-node", "3", "--seed", "2",
               "--out", g})
              .code == kExitOk);
  CHECK(fs::exists(g + ".json"));

  const auto exact = run({"exact", "--in", g, "--gap"});
  REQUIRE(exact.code == kExitOk);
  const auto ej = nlohmann::json::parse(exact.out);
  CHECK(ej["lambda"].get<double>() > 3.0);
  CHECK(ej.contains("gap"));

  const auto t1 = run({"estimate", "t1", "--in", g});
  REQUIRE(t1.code == kExitOk);
  const auto tj = nlohmann::json::parse(t1.out);
  CHECK(tj["t1"].get<double>() > 3.0);

  const auto b = run({"bounds", "--in", g, "--eps", "0.1", "--delta", "0.1"});
  CHECK(b.code == kExitOk);
  CHECK(nlohmann::json::parse(b.out).contains("sample_size"));

  const auto w1 = run({"walk", "--in", g, "--r", "50", "--seed", "4"});
  const auto w2 = run({"walk", "--in", g, "--r", "50", "--seed", "4"});
  REQUIRE(w1.code == kExitOk);
  CHECK(w1.out == w2.out);
  CHECK(nlohmann::json::parse(w1.out)["report"]["r"] == 50);

  CHECK(run({"walk", "--remote", "127.0.0.1:1"}).code == kExitUsage);

  const auto sir_csv = (dir.path / "sir.csv").string();
  CHECK(run({"sir", "--in", g, "--beta", "0.2", "--init", "0", "--out", sir_csv}).code == kExitOk);
  CHECK(slurp(sir_csv).find("t,S,I,R") != std::string::npos);

  const auto sw = run({"sweep", "--in", g, "--ratios", "0.5,2", "--reps", "5"});
  CHECK(sw.code == kExitOk);
  CHECK(run({"sweep", "--in", g, "--ratios", "0.5,abc"}).code == kExitUsage);
}

TEST_CASE("experiment outputs are reproducible") {
  TempDir a("epithresh_cli_exp_a");
  TempDir b("epithresh_cli_exp_b");
  for (const auto* d : {&a, &b}) {
    REQUIRE(run({"experiment", "--model", "chung-lu", "--n", "1000", "--seed", "7", "--out-dir",
                 d->path.string()})
                .code == kExitOk);
  }
  for (const char* f : {"records.csv", "curve.csv", "summary.json"}) {
    CHECK_MESSAGE(slurp(a.path / f) == slurp(b.path / f), f);
    CHECK(slurp(a.path / f).find("seed") != std::string::npos);
  }
}
