#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "ldpgraph/ldp.hpp"

namespace ldpgraph {

/// Collector-side view assembled from reports: symmetric bit matrix with zero
/// diagonal plus its row degrees and edge density.
struct PerturbedGraph {
  NodeId num_nodes = 0;
  std::vector<BitRow> rows;
  std::vector<std::uint32_t> row_degrees;
  double edge_density = 0.0;  // sum of row degrees / (N(N-1))

  double avg_row_degree() const {
    double s = 0.0;
    for (std::uint32_t d : row_degrees) s += d;
    return num_nodes > 0 ? s / num_nodes : 0.0;
  }
};

enum class MetricKind { kDegreeCentrality, kClusteringCoefficient };

struct MetricEstimate {
  NodeId node = 0;
  MetricKind kind = MetricKind::kDegreeCentrality;
  double value = 0.0;
};

/// Edge (i, j) is present iff either endpoint claims it. Honest rows in
/// synchronized-pair mode already agree, so the OR is a no-op for them;
/// attacker-crafted one-sided claims take effect.
PerturbedGraph assemble_perturbed_graph(std::span<const Report> reports,
                                        CollectionMode mode);

/// Unbiased inversion of randomized response on a row degree:
/// (raw - (N-1)(1-p)) / (2p - 1). Requires p > 0.5.
double estimate_degree(const PerturbedGraph& pg, double keep_prob, NodeId i);

MetricEstimate estimate_degree_centrality(const PerturbedGraph& pg,
                                          double keep_prob, NodeId i);

/// Triangle count of node i in the assembled matrix.
std::uint64_t perturbed_triangle_count(const PerturbedGraph& pg, NodeId i);

/// Bias-corrected triangle count:
///   [tau~ - d~(d~-1)p^2(1-p)/2 - d~(N-d~-1)p(1-p)theta~
///        - (N-d~-1)(N-d~-2)(1-p)^2 theta~ / 2] / (p^2 (2p-1)).
/// May be negative; callers clamp only for display. Requires p > 0.5.
double calibrate_triangle_count(double tau_tilde, double d_tilde, double num_nodes,
                                double keep_prob, double theta_tilde);

struct ClusteringEstimate {
  MetricEstimate estimate;          // value clamped to [0, 1]
  double raw_value = 0.0;           // unclamped 2 tau / (d~(d~-1))
  double raw_triangles = 0.0;       // tau~ from the assembled matrix
  double calibrated_triangles = 0.0;
  double reported_degree = 0.0;     // d~ as reported (before clamping)
};

/// cc_i = 2 R(tau~_i) / (d~_i (d~_i - 1)) with the reported degree clamped to
/// >= 2 in the denominator.
ClusteringEstimate estimate_clustering_coefficient(const PerturbedGraph& pg,
                                                   std::span<const Report> reports,
                                                   double keep_prob, NodeId i);

/// CSV export: node_id, kind, value, raw_tau, calibrated_tau, d_tilde.
void write_estimates_csv(std::ostream& out,
                         std::span<const MetricEstimate> degree_estimates,
                         std::span<const ClusteringEstimate> cc_estimates);

}  // namespace ldpgraph
