#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "ldpgraph/graph.hpp"

namespace ldpgraph::testutil {

// Brute-force references, kept deliberately naive and independent of the
// bitset implementations they check.

inline std::uint64_t naive_triangle_count(const Graph& g, NodeId i) {
  std::uint64_t count = 0;
  for (NodeId j = 0; j < g.num_nodes(); ++j) {
    for (NodeId k = j + 1; k < g.num_nodes(); ++k) {
      if (j == i || k == i) continue;
      if (g.has_edge(i, j) && g.has_edge(i, k) && g.has_edge(j, k)) ++count;
    }
  }
  return count;
}

inline std::uint64_t naive_total_triangles(const Graph& g) {
  std::uint64_t count = 0;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    for (NodeId j = i + 1; j < g.num_nodes(); ++j) {
      for (NodeId k = j + 1; k < g.num_nodes(); ++k) {
        if (g.has_edge(i, j) && g.has_edge(i, k) && g.has_edge(j, k)) ++count;
      }
    }
  }
  return count;
}

inline double naive_degree_centrality(const Graph& g, NodeId i) {
  std::uint64_t d = 0;
  for (NodeId j = 0; j < g.num_nodes(); ++j) {
    if (j != i && g.has_edge(i, j)) ++d;
  }
  return static_cast<double>(d) / (g.num_nodes() - 1);
}

inline double naive_clustering_coefficient(const Graph& g, NodeId i) {
  std::uint64_t d = 0;
  for (NodeId j = 0; j < g.num_nodes(); ++j) {
    if (j != i && g.has_edge(i, j)) ++d;
  }
  if (d < 2) return 0.0;
  return 2.0 * static_cast<double>(naive_triangle_count(g, i)) /
         (static_cast<double>(d) * static_cast<double>(d - 1));
}

template <typename Container>
double mean(const Container& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

template <typename Container>
double stddev(const Container& xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size()));
}

inline double laplace_cdf(double x, double scale) {
  return x < 0.0 ? 0.5 * std::exp(x / scale) : 1.0 - 0.5 * std::exp(-x / scale);
}

/// One-sample Kolmogorov-Smirnov statistic against a CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf&& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double stat = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    stat = std::max(stat, std::abs(f - static_cast<double>(i) / n));
    stat = std::max(stat, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return stat;
}

}  // namespace ldpgraph::testutil
