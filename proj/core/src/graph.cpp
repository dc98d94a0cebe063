#include "ldpgraph/graph.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace ldpgraph {

GraphBuilder::GraphBuilder(NodeId num_nodes) : rows_(num_nodes, BitRow(num_nodes)) {}

bool GraphBuilder::add_edge(NodeId i, NodeId j) {
  if (i >= rows_.size() || j >= rows_.size()) {
    throw std::out_of_range("GraphBuilder::add_edge: node id out of range");
  }
  if (i == j || rows_[i].get(j)) return false;
  rows_[i].set(j);
  rows_[j].set(i);
  ++edge_count_;
  return true;
}

Graph GraphBuilder::build() && {
  Graph g;
  g.rows_ = std::move(rows_);
  g.degrees_.reserve(g.rows_.size());
  for (const BitRow& r : g.rows_) {
    g.degrees_.push_back(static_cast<std::uint32_t>(r.popcount()));
  }
  g.labels_ = std::move(labels_);
  g.edge_count_ = edge_count_;
  return g;
}

namespace {

bool parse_node(std::string_view tok, std::int64_t& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

Graph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::unordered_map<std::int64_t, NodeId> id_of;
  std::vector<std::int64_t> labels;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == options.comment_prefix) continue;

    std::int64_t u = 0, v = 0;
    std::size_t sep = line.find_first_of(" \t", start);
    std::size_t vstart = sep == std::string::npos
                             ? std::string::npos
                             : line.find_first_not_of(" \t", sep);
    std::size_t vend = vstart == std::string::npos
                           ? std::string::npos
                           : line.find_first_of(" \t\r", vstart);
    if (vend == std::string::npos) vend = line.size();
    std::size_t trail = vend == line.size() ? std::string::npos
                                            : line.find_first_not_of(" \t\r", vend);
    if (sep == std::string::npos || vstart == std::string::npos ||
        trail != std::string::npos ||
        !parse_node(std::string_view(line).substr(start, sep - start), u) ||
        !parse_node(std::string_view(line).substr(vstart, vend - vstart), v)) {
      throw std::runtime_error("edge list parse error at line " +
                               std::to_string(line_no) + ": '" + line + "'");
    }
    u -= options.index_base;
    v -= options.index_base;
    for (std::int64_t lab : {u, v}) {
      if (id_of.emplace(lab, static_cast<NodeId>(labels.size())).second) {
        labels.push_back(lab);
      }
    }
    edges.emplace_back(u, v);
  }
  if (labels.empty()) {
    throw std::runtime_error("edge list is empty");
  }

  GraphBuilder builder(static_cast<NodeId>(labels.size()));
  for (auto [u, v] : edges) {
    builder.add_edge(id_of.at(u), id_of.at(v));
  }
  builder.set_labels(std::move(labels));
  return std::move(builder).build();
}

Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open edge list file: " + path);
  }
  return load_edge_list(in, options);
}

double degree_centrality(const Graph& g, NodeId i) {
  if (g.num_nodes() < 2) {
    throw std::domain_error("degree_centrality requires at least 2 nodes");
  }
  return static_cast<double>(g.degree(i)) / (g.num_nodes() - 1);
}

std::uint64_t triangle_count(const Graph& g, NodeId i) {
  // Each triangle {i, j, k} is seen from both j and k.
  std::uint64_t twice = 0;
  g.row(i).for_each_set([&](std::size_t j) {
    twice += g.row(i).and_popcount(g.row(static_cast<NodeId>(j)));
  });
  return twice / 2;
}

double local_clustering_coefficient(const Graph& g, NodeId i) {
  const std::uint64_t d = g.degree(i);
  if (d < 2) return 0.0;
  return 2.0 * static_cast<double>(triangle_count(g, i)) /
         (static_cast<double>(d) * static_cast<double>(d - 1));
}

GraphStats graph_stats(const Graph& g) {
  const double n = g.num_nodes();
  if (n < 2) {
    throw std::domain_error("graph_stats requires at least 2 nodes");
  }
  GraphStats s;
  s.edge_count = g.edge_count();
  s.avg_degree = 2.0 * static_cast<double>(s.edge_count) / n;
  s.edge_density = 2.0 * static_cast<double>(s.edge_count) / (n * (n - 1.0));
  return s;
}

Graph extend_with_isolated_nodes(const Graph& g, NodeId extra) {
  const NodeId n = g.num_nodes();
  GraphBuilder builder(n + extra);
  for (NodeId i = 0; i < n; ++i) {
    g.row(i).for_each_set([&](std::size_t j) {
      if (j > i) builder.add_edge(i, static_cast<NodeId>(j));
    });
  }
  return std::move(builder).build();
}

}  // namespace ldpgraph
