#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "ldpgraph/graph.hpp"
#include "ldpgraph/rng.hpp"

namespace ldpgraph {

struct DatasetInfo {
  std::string name;
  std::string url;
  std::uint64_t expected_nodes = 0;
  std::uint64_t expected_edges = 0;
};

std::span<const DatasetInfo> dataset_registry();
std::optional<DatasetInfo> find_dataset(const std::string& name);

/// Cache directory resolution: explicit argument, else $LDPGRAPH_CACHE,
/// else ./ldpgraph-cache.
std::filesystem::path resolve_cache_dir(const std::filesystem::path& requested = {});

/// Downloads the named dataset into the cache unless already present and
/// returns the local edge-list path. Gzip payloads are inflated. Throws on
/// unknown names and after exhausting download retries.
std::filesystem::path fetch_dataset(const std::string& name,
                                    const std::filesystem::path& cache_dir);

/// Seeded Erdos-Renyi graph G(n, p).
Graph random_graph(NodeId num_nodes, double edge_prob, Seed seed);

/// Seeded planted-partition graph: `blocks` groups of `block_size` nodes,
/// within-block edge probability p_in, cross-block p_out.
Graph clustered_graph(NodeId blocks, NodeId block_size, double p_in, double p_out,
                      Seed seed);

/// Loads a graph from a registry name, a synthetic spec, or a file path.
/// Synthetic specs: "er:<nodes>:<edge_prob>:<seed>" and
/// "sbm:<blocks>:<block_size>:<p_in>:<p_out>:<seed>".
/// Registry names are fetched (network) unless already cached; counts are
/// verified against the registry after parsing.
Graph load_dataset(const std::string& name_or_path,
                   const std::filesystem::path& cache_dir = {});

}  // namespace ldpgraph
