#include "epithresh/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace epithresh {

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

BuildResult build_graph(std::span<const Edge> edges, std::size_t n) {
  if (n >= std::numeric_limits<NodeId>::max()) {
    throw GraphError("node count " + std::to_string(n) + " exceeds id range");
  }
  BuildResult result;
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") has id out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) {
      ++result.self_loops_removed;
      continue;
    }
    canon.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(canon.begin(), canon.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  const auto last = std::unique(canon.begin(), canon.end());
  result.duplicates_removed = static_cast<std::uint64_t>(canon.end() - last);
  canon.erase(last, canon.end());

  std::vector<EdgeIndex> offsets(n + 1, 0);
  for (const Edge& e : canon) {
    ++offsets[e.u + 1];
    ++offsets[e.v + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<NodeId> neighbors(offsets[n]);
  std::vector<EdgeIndex> cursor(offsets.begin(), offsets.end() - 1);
  // canon is sorted by (u, v), so filling in this order leaves every list sorted:
  // the entries of u below u arrive first (as v-side), then those above u.
  for (const Edge& e : canon) neighbors[cursor[e.v]++] = e.u;
  for (const Edge& e : canon) neighbors[cursor[e.u]++] = e.v;
  result.graph = Graph(std::move(offsets), std::move(neighbors));
  return result;
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  const std::size_t n = g.node_count();
  s.degrees.resize(n);
  std::uint64_t d_min = std::numeric_limits<std::uint64_t>::max();
  for (NodeId v = 0; v < n; ++v) {
    const std::uint64_t d = g.degree(v);
    s.degrees[v] = d;
    s.m1 += d;
    s.m2 += d * d;
    s.d_max = std::max(s.d_max, d);
    if (d == 0) {
      ++s.isolated_count;
    } else {
      d_min = std::min(d_min, d);
    }
  }
  s.d_min = s.isolated_count == n ? 0 : d_min;
  return s;
}

std::vector<std::uint32_t> component_labels(const Graph& g, std::uint32_t* count) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> label(n, kUnset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(u)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

bool is_connected(const Graph& g) {
  std::uint32_t count = 0;
  component_labels(g, &count);
  return count <= 1;
}

ComponentResult largest_component(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw GraphError("largest_component: empty graph");
  std::uint32_t count = 0;
  const auto label = component_labels(g, &count);
  std::vector<std::size_t> sizes(count, 0);
  for (auto l : label) ++sizes[l];
  // Labels follow smallest member id, so max_element's first-wins picks the tie-break.
  const auto best = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  ComponentResult r;
  r.old_to_new.assign(n, ComponentResult::kNotInComponent);
  for (NodeId v = 0; v < n; ++v) {
    if (label[v] == best) {
      r.old_to_new[v] = static_cast<NodeId>(r.new_to_old.size());
      r.new_to_old.push_back(v);
    }
  }
  std::vector<EdgeIndex> offsets(r.new_to_old.size() + 1, 0);
  std::vector<NodeId> neighbors;
  for (std::size_t i = 0; i < r.new_to_old.size(); ++i) {
    // Renumbering is monotone, so mapped lists stay sorted.
    for (NodeId w : g.neighbors(r.new_to_old[i])) neighbors.push_back(r.old_to_new[w]);
    offsets[i + 1] = neighbors.size();
  }
  r.graph = Graph(std::move(offsets), std::move(neighbors));
  return r;
}

std::vector<std::uint8_t> bipartition(const Graph& g) {
  constexpr std::uint8_t kUnset = 2;
  const std::size_t n = g.node_count();
  std::vector<std::uint8_t> color(n, kUnset);
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    if (color[s] != kUnset) continue;
    color[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      for (NodeId w : g.neighbors(u)) {
        if (color[w] == kUnset) {
          color[w] = static_cast<std::uint8_t>(1 - color[u]);
          queue.push_back(w);
        } else if (color[w] == color[u]) {
          return {};
        }
      }
    }
  }
  return color;
}

namespace {

template <typename Int>
bool parse_int(std::string_view tok, Int& out) {
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::uint64_t declared_n = 0;
  bool has_declared = false;
  std::uint64_t max_id = 0;
  bool any = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (toks[0].front() == '#') {
      if (toks.size() >= 3 && toks[0] == "#" && toks[1] == "nodes") {
        if (!parse_int(toks[2], declared_n)) {
          throw GraphError("line " + std::to_string(line_no) + ": bad node count");
        }
        has_declared = true;
      }
      continue;
    }
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (toks.size() != 2 || !parse_int(toks[0], u) || !parse_int(toks[1], v)) {
      throw GraphError("line " + std::to_string(line_no) + ": expected \"u v\", got \"" +
                       std::string(line) + "\"");
    }
    constexpr std::uint64_t kMaxId = std::numeric_limits<NodeId>::max() - 1;
    if (u >= kMaxId || v >= kMaxId) {
      throw GraphError("line " + std::to_string(line_no) + ": node id overflow");
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    max_id = std::max({max_id, u, v});
    any = true;
    if (end == text.size()) break;
  }
  std::uint64_t n = any ? max_id + 1 : 0;
  if (has_declared) {
    if (any && declared_n <= max_id) {
      throw GraphError("declared node count " + std::to_string(declared_n) +
                       " is smaller than max id " + std::to_string(max_id) + " + 1");
    }
    n = declared_n;
  }
  return build_graph(edges, n).graph;
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

std::string format_edge_list(const Graph& g) {
  std::string out;
  out += "# nodes " + std::to_string(g.node_count()) + " edges " +
         std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write " + path.string());
  out << format_edge_list(g);
  if (!out) throw GraphError("write failed for " + path.string());
}

}  // namespace epithresh
