#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace epithresh {

using NodeId = std::uint32_t;
using EdgeIndex = std::uint64_t;

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable undirected simple graph in compressed sparse row form.
///
/// Neighbor lists are sorted ascending, contain no self-loops and no
/// duplicates, and adjacency is symmetric. offsets has n+1 entries with
/// offsets[n] == 2m.
class Graph {
 public:
  Graph() : offsets_{0} {}

  std::size_t node_count() const { return offsets_.size() - 1; }
  EdgeIndex edge_count() const { return neighbors_.size() / 2; }

  std::uint64_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  std::span<const EdgeIndex> offsets() const { return offsets_; }
  std::span<const NodeId> adjacency() const { return neighbors_; }

  bool has_edge(NodeId u, NodeId v) const;

  /// Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph(std::vector<EdgeIndex> offsets, std::vector<NodeId> neighbors)
      : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)) {}

  friend struct BuildResult build_graph(std::span<const Edge>, std::size_t);
  friend struct ComponentResult largest_component(const Graph&);

  std::vector<EdgeIndex> offsets_;
  std::vector<NodeId> neighbors_;
};

struct BuildResult {
  Graph graph;
  std::uint64_t self_loops_removed = 0;
  std::uint64_t duplicates_removed = 0;
};

/// Canonicalize an arbitrary edge list over nodes [0, n). Self-loops and
/// repeated pairs (in either orientation) are dropped and counted.
BuildResult build_graph(std::span<const Edge> edges, std::size_t n);

struct DegreeStats {
  std::vector<std::uint64_t> degrees;
  std::uint64_t m1 = 0;  // sum of degrees
  std::uint64_t m2 = 0;  // sum of squared degrees
  std::uint64_t d_max = 0;
  std::uint64_t d_min = 0;  // over nodes with positive degree; 0 if none
  std::uint64_t isolated_count = 0;
};

DegreeStats degree_stats(const Graph& g);

struct ComponentResult {
  Graph graph;
  /// old id -> new id, or kNotInComponent.
  std::vector<NodeId> old_to_new;
  /// new id -> old id.
  std::vector<NodeId> new_to_old;

  static constexpr NodeId kNotInComponent = static_cast<NodeId>(-1);
};

/// Connected component labels; labels are assigned in order of smallest member id.
std::vector<std::uint32_t> component_labels(const Graph& g, std::uint32_t* count = nullptr);

bool is_connected(const Graph& g);

/// Induced subgraph on the largest connected component. Ties go to the
/// component holding the smallest node id. Relative node order is kept.
ComponentResult largest_component(const Graph& g);

/// Two-coloring of a bipartite graph, or empty if an odd cycle exists.
std::vector<std::uint8_t> bipartition(const Graph& g);

/// Whitespace-separated "u v" pairs, 0-indexed, '#' lines ignored. A
/// "# nodes <n>" comment, when present, fixes the node count (so isolated
/// trailing nodes survive a round trip); otherwise n = max id + 1.
Graph read_edge_list(const std::filesystem::path& path);
Graph parse_edge_list(std::string_view text);

void write_edge_list(const Graph& g, const std::filesystem::path& path);
std::string format_edge_list(const Graph& g);

}  // namespace epithresh
