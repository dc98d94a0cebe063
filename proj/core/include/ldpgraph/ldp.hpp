#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "ldpgraph/graph.hpp"
#include "ldpgraph/rng.hpp"

namespace ldpgraph {

/// Budget split between the adjacency bit vector (epsilon1, randomized
/// response) and the degree (epsilon2, Laplace).
struct PrivacyParams {
  double epsilon = 0.0;
  double alpha = 0.5;
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double keep_prob = 0.5;      // p = e^eps1 / (1 + e^eps1)
  double laplace_scale = 0.0;  // b = 2 / eps2; +inf when eps2 == 0
};

PrivacyParams split_budget(double epsilon, double alpha = 0.5);

/// p = e^eps1 / (1 + e^eps1). Keeping a bit with probability p and flipping
/// it otherwise gives a single-bit likelihood ratio of exactly e^eps1.
double perturbation_probability(double epsilon1);

enum class CollectionMode {
  // One keep/flip trial per unordered pair; both endpoints report the same
  // bit, so the perturbed matrix is symmetric by construction. This is the
  // mode the triangle calibration constants assume.
  kSynchronizedPair,
  // Every directed bit perturbed independently; the collector's OR rule
  // symmetrizes downstream.
  kDualReportOr,
};

/// One user's submission: perturbed adjacency row plus Laplace-noised degree.
struct Report {
  NodeId node = 0;
  BitRow bits;
  double degree = 0.0;
};

/// Randomized response over the whole adjacency matrix. Requires p > 0.5.
/// Deterministic given (seed, pair); independent of evaluation order.
std::vector<BitRow> perturb_adjacency(const Graph& g, double keep_prob,
                                      CollectionMode mode, Seed seed);

/// true_degree + Laplace(0, 2/eps2). Requires eps2 > 0.
double perturb_degree(double true_degree, const PrivacyParams& params, Seed seed,
                      NodeId node);

/// Full user-side protocol: one Report per node, bits from perturb_adjacency
/// and degree from perturb_degree of the true degree.
std::vector<Report> collect_reports(const Graph& g, const PrivacyParams& params,
                                    CollectionMode mode, Seed seed);

/// Binary row format: u32 node count, then per report u32 node id, u32 bit
/// length, packed little-endian words, f64 degree.
void write_reports(std::ostream& out, std::span<const Report> reports);
std::vector<Report> read_reports(std::istream& in);

/// Debug CSV: node, degree, popcount, set bit list (semicolon separated).
void write_reports_csv(std::ostream& out, std::span<const Report> reports);

}  // namespace ldpgraph
