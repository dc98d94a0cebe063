#include "ldpgraph/estimator.hpp"

#include <algorithm>
#include <stdexcept>

namespace ldpgraph {

PerturbedGraph assemble_perturbed_graph(std::span<const Report> reports,
                                        CollectionMode /*mode*/) {
  const std::size_t n = reports.size();
  for (const Report& r : reports) {
    if (r.bits.size() != n) {
      throw std::invalid_argument("assemble_perturbed_graph: ragged report rows");
    }
  }

  PerturbedGraph pg;
  pg.num_nodes = static_cast<NodeId>(n);
  pg.rows.assign(n, BitRow(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (reports[i].node != i) {
      throw std::invalid_argument(
          "assemble_perturbed_graph: reports must be ordered by node id");
    }
    pg.rows[i].or_with(reports[i].bits);
    reports[i].bits.for_each_set([&](std::size_t j) { pg.rows[j].set(i); });
  }
  for (std::size_t i = 0; i < n; ++i) pg.rows[i].clear(i);

  pg.row_degrees.reserve(n);
  std::uint64_t total = 0;
  for (const BitRow& r : pg.rows) {
    const auto d = static_cast<std::uint32_t>(r.popcount());
    pg.row_degrees.push_back(d);
    total += d;
  }
  pg.edge_density =
      n >= 2 ? static_cast<double>(total) /
                   (static_cast<double>(n) * static_cast<double>(n - 1))
             : 0.0;
  return pg;
}

namespace {

void require_invertible(double keep_prob) {
  if (!(keep_prob > 0.5)) {
    throw std::domain_error("estimator calibration is singular at p <= 0.5");
  }
}

}  // namespace

double estimate_degree(const PerturbedGraph& pg, double keep_prob, NodeId i) {
  require_invertible(keep_prob);
  const double n = pg.num_nodes;
  return (pg.row_degrees[i] - (n - 1.0) * (1.0 - keep_prob)) /
         (2.0 * keep_prob - 1.0);
}

MetricEstimate estimate_degree_centrality(const PerturbedGraph& pg,
                                          double keep_prob, NodeId i) {
  if (pg.num_nodes < 2) {
    throw std::domain_error("estimate_degree_centrality requires at least 2 nodes");
  }
  return MetricEstimate{i, MetricKind::kDegreeCentrality,
                        estimate_degree(pg, keep_prob, i) / (pg.num_nodes - 1.0)};
}

std::uint64_t perturbed_triangle_count(const PerturbedGraph& pg, NodeId i) {
  std::uint64_t twice = 0;
  pg.rows[i].for_each_set([&](std::size_t j) {
    twice += pg.rows[i].and_popcount(pg.rows[j]);
  });
  return twice / 2;
}

double calibrate_triangle_count(double tau_tilde, double d_tilde, double num_nodes,
                                double keep_prob, double theta_tilde) {
  require_invertible(keep_prob);
  const double p = keep_prob;
  const double q = 1.0 - p;
  const double n = num_nodes;
  const double d = d_tilde;
  const double both_neighbors = 0.5 * d * (d - 1.0) * p * p * q;
  const double one_neighbor = d * (n - d - 1.0) * p * q * theta_tilde;
  const double no_neighbor =
      0.5 * (n - d - 1.0) * (n - d - 2.0) * q * q * theta_tilde;
  return (tau_tilde - both_neighbors - one_neighbor - no_neighbor) /
         (p * p * (2.0 * p - 1.0));
}

ClusteringEstimate estimate_clustering_coefficient(const PerturbedGraph& pg,
                                                   std::span<const Report> reports,
                                                   double keep_prob, NodeId i) {
  require_invertible(keep_prob);
  ClusteringEstimate e;
  e.reported_degree = reports[i].degree;
  e.raw_triangles = static_cast<double>(perturbed_triangle_count(pg, i));
  e.calibrated_triangles =
      calibrate_triangle_count(e.raw_triangles, e.reported_degree, pg.num_nodes,
                               keep_prob, pg.edge_density);
  // Laplace noise can push the reported degree below 2 and blow up the
  // denominator; clamp there only.
  const double denom_degree = std::max(e.reported_degree, 2.0);
  e.raw_value = 2.0 * e.calibrated_triangles / (denom_degree * (denom_degree - 1.0));
  e.estimate = MetricEstimate{i, MetricKind::kClusteringCoefficient,
                              std::clamp(e.raw_value, 0.0, 1.0)};
  return e;
}

void write_estimates_csv(std::ostream& out,
                         std::span<const MetricEstimate> degree_estimates,
                         std::span<const ClusteringEstimate> cc_estimates) {
  out << "node_id,kind,value,raw_tau,calibrated_tau,d_tilde\n";
  for (const MetricEstimate& m : degree_estimates) {
    out << m.node << ",degree_centrality," << m.value << ",,,\n";
  }
  for (const ClusteringEstimate& c : cc_estimates) {
    out << c.estimate.node << ",clustering_coefficient," << c.estimate.value << ','
        << c.raw_triangles << ',' << c.calibrated_triangles << ','
        << c.reported_degree << '\n';
  }
}

}  // namespace ldpgraph
