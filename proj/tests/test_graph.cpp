#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "epithresh/graph.hpp"
#include "support.hpp"

using namespace epithresh;
using testsupport::complete;
using testsupport::cycle;
using testsupport::star;

TEST_CASE("build_graph drops self-loops and duplicates") {
  const std::vector<Edge> e{{0, 1}, {1, 0}, {1, 1}};
  const auto r = build_graph(e, 2);
  CHECK(r.graph.edge_count() == 1);
  CHECK(r.graph.degree(0) == 1);
  CHECK(r.graph.degree(1) == 1);
  CHECK(r.self_loops_removed == 1);
  CHECK(r.duplicates_removed == 1);
}

TEST_CASE("build_graph on a 4-cycle and on no edges") {
  const Graph c = cycle(4);
  CHECK(c.edge_count() == 4);
  for (NodeId v = 0; v < 4; ++v) CHECK(c.degree(v) == 2);

  const auto empty = build_graph({}, 3).graph;
  CHECK(empty.node_count() == 3);
  CHECK(empty.edge_count() == 0);
  for (NodeId v = 0; v < 3; ++v) CHECK(empty.degree(v) == 0);
}

TEST_CASE("build_graph rejects out-of-range ids") {
  const std::vector<Edge> e{{0, 3}};
  CHECK_THROWS_AS(build_graph(e, 3), GraphError);
}

TEST_CASE("CSR invariants hold on random multigraph input") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<NodeId> pick(0, 59);
  std::vector<Edge> raw;
  for (int i = 0; i < 600; ++i) raw.push_back({pick(rng), pick(rng)});
  const auto r = build_graph(raw, 60);
  const Graph& g = r.graph;

  std::set<std::pair<NodeId, NodeId>> expect;
  std::uint64_t loops = 0;
  for (const Edge& e : raw) {
    if (e.u == e.v) {
      ++loops;
      continue;
    }
    expect.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  CHECK(g.edge_count() == expect.size());
  CHECK(r.self_loops_removed == loops);
  CHECK(r.duplicates_removed == raw.size() - loops - expect.size());
  CHECK(g.offsets().back() == 2 * g.edge_count());
  for (NodeId v = 0; v < 60; ++v) {
    const auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
    for (NodeId w : nb) {
      CHECK(w != v);
      CHECK(g.has_edge(w, v));
    }
  }
  std::size_t i = 0;
  for (const auto& [u, v] : expect) {
    CHECK(g.edges()[i] == Edge{u, v});
    ++i;
  }
}

TEST_CASE("degree_stats on star and K4") {
  const auto s = degree_stats(star(5));
  CHECK(s.m1 == 8);
  CHECK(s.m2 == 20);
  CHECK(s.d_max == 4);
  CHECK(s.d_min == 1);
  const auto k = degree_stats(complete(4));
  CHECK(k.m1 == 12);
  CHECK(k.m2 == 36);
}

TEST_CASE("degree_stats matches a brute-force recount") {
  const Graph g = testsupport::gnp(30, 0.2, 5);
  const auto s = degree_stats(g);
  std::vector<std::uint64_t> deg(30, 0);
  std::uint64_t edges = 0;
  for (NodeId u = 0; u < 30; ++u)
    for (NodeId v = u + 1; v < 30; ++v)
      if (g.has_edge(u, v)) {
        ++deg[u];
        ++deg[v];
        ++edges;
      }
  std::uint64_t m2 = 0;
  for (auto d : deg) m2 += d * d;
  CHECK(s.degrees == deg);
  CHECK(s.m1 == 2 * edges);
  CHECK(s.m2 == m2);
}

TEST_CASE("largest_component") {
  SUBCASE("two disjoint triangles pick the one holding node 0") {
    const std::vector<Edge> e{{3, 4}, {4, 5}, {3, 5}, {0, 1}, {1, 2}, {0, 2}};
    const auto c = largest_component(build_graph(e, 6).graph);
    CHECK(c.graph.node_count() == 3);
    CHECK(c.new_to_old == std::vector<NodeId>{0, 1, 2});
    CHECK(c.old_to_new[4] == ComponentResult::kNotInComponent);
  }
  SUBCASE("connected graph maps to itself") {
    const Graph g = cycle(7);
    const auto c = largest_component(g);
    CHECK(c.graph == g);
    for (NodeId v = 0; v < 7; ++v) CHECK(c.old_to_new[v] == v);
  }
  SUBCASE("isolated nodes are excluded") {
    const std::vector<Edge> e{{1, 2}, {2, 3}};
    const auto c = largest_component(build_graph(e, 6).graph);
    CHECK(c.graph.node_count() == 3);
    CHECK(c.graph.edge_count() == 2);
    CHECK(c.new_to_old == std::vector<NodeId>{1, 2, 3});
    CHECK(c.old_to_new[0] == ComponentResult::kNotInComponent);
    CHECK(c.old_to_new[5] == ComponentResult::kNotInComponent);
  }
  SUBCASE("empty graph") {
    CHECK_THROWS_AS(largest_component(Graph{}), GraphError);
  }
}

TEST_CASE("bipartition") {
  CHECK(bipartition(cycle(4)).size() == 4);
  CHECK(bipartition(cycle(5)).empty());
  CHECK(bipartition(star(6))[0] != bipartition(star(6))[3]);
}

TEST_CASE("edge-list parsing") {
  const Graph p = parse_edge_list("0 1\n1 2\n");
  CHECK(p.node_count() == 3);
  CHECK(p.edge_count() == 2);
  CHECK(p.has_edge(0, 1));
  CHECK(p.has_edge(1, 2));

  const Graph c = parse_edge_list("# comment\n0 1\n# another\n1 2\n");
  CHECK(c == p);

  const Graph declared = parse_edge_list("# nodes 5\n0 1\n");
  CHECK(declared.node_count() == 5);

  try {
    parse_edge_list("0 1\n1 x\n");
    FAIL("expected a parse error");
  } catch (const GraphError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_edge_list("0 99999999999\n"), GraphError);
}

TEST_CASE("write(read(f)) is the canonical form of f") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<NodeId> pick(0, 39);
  std::string text;
  std::vector<Edge> raw;
  while (raw.size() < 100) {
    const Edge e{pick(rng), pick(rng)};
    raw.push_back(e);
    text += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  }
  NodeId max_id = 0;
  for (const Edge& e : raw) max_id = std::max({max_id, e.u, e.v});
  const Graph canonical = build_graph(raw, max_id + 1).graph;

  const auto dir = std::filesystem::temp_directory_path() / "epithresh_graph_test";
  std::filesystem::create_directories(dir);
  const auto in = dir / "in.txt";
  const auto out = dir / "out.txt";
  std::ofstream(in) << text;
  const Graph g = read_edge_list(in);
  write_edge_list(g, out);
  CHECK(g == canonical);
  CHECK(read_edge_list(out) == canonical);
  CHECK(format_edge_list(read_edge_list(out)) == format_edge_list(canonical));
  std::filesystem::remove_all(dir);
}
