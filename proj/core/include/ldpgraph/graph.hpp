#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldpgraph/bitrow.hpp"

namespace ldpgraph {

using NodeId = std::uint32_t;

struct GraphStats {
  double avg_degree = 0.0;
  double edge_density = 0.0;  // 2E / (N(N-1))
  std::uint64_t edge_count = 0;
};

struct EdgeListOptions {
  char comment_prefix = '#';
  // Subtracted from parsed labels before remapping; affects only the retained
  // label map, node indices are dense either way.
  std::int64_t index_base = 0;
};

/// Undirected simple graph over dense node ids [0, N). Adjacency is stored as
/// packed bit rows so that O(N^2) perturbation and popcount-based triangle
/// counting stay feasible at N ~ 1e5. Immutable once built.
class Graph {
 public:
  Graph() = default;

  NodeId num_nodes() const { return static_cast<NodeId>(rows_.size()); }
  std::uint64_t edge_count() const { return edge_count_; }
  bool has_edge(NodeId i, NodeId j) const { return rows_[i].get(j); }
  const BitRow& row(NodeId i) const { return rows_[i]; }
  std::uint32_t degree(NodeId i) const { return degrees_[i]; }
  std::span<const std::uint32_t> degrees() const { return degrees_; }

  /// Original input label for a dense node id (identity when built directly).
  std::int64_t label(NodeId i) const {
    return labels_.empty() ? static_cast<std::int64_t>(i) : labels_[i];
  }

 private:
  friend class GraphBuilder;
  std::vector<BitRow> rows_;
  std::vector<std::uint32_t> degrees_;
  std::vector<std::int64_t> labels_;
  std::uint64_t edge_count_ = 0;
};

/// Single-owner construction; produces a Graph whose adjacency is symmetric
/// with a zero diagonal and degrees equal to row popcounts.
class GraphBuilder {
 public:
  explicit GraphBuilder(NodeId num_nodes);

  /// Inserts the undirected edge {i, j}. Self-loops and duplicates are
  /// ignored. Returns true when the edge was new.
  bool add_edge(NodeId i, NodeId j);

  Graph build() &&;
  void set_labels(std::vector<std::int64_t> labels) { labels_ = std::move(labels); }

 private:
  std::vector<BitRow> rows_;
  std::vector<std::int64_t> labels_;
  std::uint64_t edge_count_ = 0;
};

/// Parses a whitespace-separated edge list ("u v" per line, comment lines
/// skipped). Node labels are remapped to dense ids in first-appearance order;
/// duplicate edges collapse and self-loops are dropped.
Graph load_edge_list(std::istream& in, const EdgeListOptions& options = {});
Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options = {});

/// d_i / (N - 1). Requires N >= 2.
double degree_centrality(const Graph& g, NodeId i);

/// Number of unordered neighbor pairs {j, k} of i joined by an edge.
std::uint64_t triangle_count(const Graph& g, NodeId i);

/// 2 tau_i / (d_i (d_i - 1)); defined as 0 when d_i < 2.
double local_clustering_coefficient(const Graph& g, NodeId i);

GraphStats graph_stats(const Graph& g);

/// Copy of g with `extra` isolated nodes appended (ids N .. N+extra-1).
Graph extend_with_isolated_nodes(const Graph& g, NodeId extra);

}  // namespace ldpgraph
