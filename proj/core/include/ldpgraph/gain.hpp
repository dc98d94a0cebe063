#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "ldpgraph/attacks.hpp"

namespace ldpgraph {

struct TargetGain {
  NodeId target = 0;
  double before = 0.0;  // estimate without the attack
  double after = 0.0;   // estimate with crafted fake reports
  double delta = 0.0;   // |after - before|
};

struct GainReport {
  MetricKind metric = MetricKind::kDegreeCentrality;
  AttackKind attack = AttackKind::kMga;
  std::vector<TargetGain> targets;
  double total = 0.0;  // sum of per-target deltas
};

struct GainOptions {
  CollectionMode mode = CollectionMode::kSynchronizedPair;
  // Common random numbers: the attack run reuses the baseline's genuine
  // randomness so the difference isolates the crafted reports.
  bool paired = true;
  // Baseline over the n genuine users only, instead of all N identities
  // reporting honestly.
  bool genuine_only_baseline = false;
};

/// Both collections of a paired gain measurement, kept around so
/// countermeasures can re-estimate from the attacked reports.
struct AttackRun {
  std::vector<Report> baseline_reports;
  std::vector<Report> attack_reports;
  PerturbedGraph baseline_graph;
  PerturbedGraph attack_graph;
};

/// Baseline collection over `g_base` (all N identities honest) plus the same
/// collection with fake reports replaced by the plan.
AttackRun run_attack_collection(const Graph& g_base, const ThreatModel& tm,
                                const AttackPlan& plan, const PrivacyParams& params,
                                Seed seed, const GainOptions& options = {});

/// Per-target estimate for either metric from an assembled graph.
double estimate_target_metric(const PerturbedGraph& pg,
                              std::span<const Report> reports, MetricKind metric,
                              double keep_prob, NodeId target);

GainReport gain_from_run(const AttackRun& run, const ThreatModel& tm,
                         const AttackPlan& plan, double keep_prob);

/// Runs the collection twice over the baseline world `g_base` (genuine graph
/// plus fakes with their initial edges): once with every identity honest,
/// once with fake reports replaced by the plan. Returns per-target gains.
GainReport empirical_gain(const Graph& g_base, const ThreatModel& tm,
                          const AttackPlan& plan, const PrivacyParams& params,
                          Seed seed, const GainOptions& options = {});

/// Degree-centrality gain computed pair-by-pair without materializing report
/// sets or perturbed matrices; O(N) memory beyond the input graph. Takes the
/// genuine graph and treats fake identities as isolated (fresh mode only).
/// Matches the assembled-matrix path bit for bit.
GainReport empirical_gain_streaming_degree(const Graph& genuine,
                                           const ThreatModel& tm,
                                           const AttackPlan& plan,
                                           const PrivacyParams& params, Seed seed,
                                           CollectionMode mode);

/// Mean raw row degree of a fresh-mode baseline collection, computed the same
/// streaming way.
double streaming_avg_perturbed_degree(const Graph& genuine, const ThreatModel& tm,
                                      const PrivacyParams& params, Seed seed,
                                      CollectionMode mode);

/// Closed-form MGA gain on degree centrality:
///   (m r / (N-1)) (min(r, floor(dbar)) / r - dbar / (N-1)).
double theoretical_gain_degree(std::uint64_t fake_count, std::uint64_t target_count,
                               std::uint64_t total_nodes,
                               double avg_perturbed_degree);

/// Closed-form MGA gain on the clustering coefficient:
///   r * [2 / (p^2 (2p-1))] * [1 / (dbar (dbar-1))]
///     * m / [2 p'(1-p')^2 + p'^2 (1-p') + 3 (1-p')^3],  p' = dbar / (N-1).
/// Requires p > 0.5 and dbar > 1.
double theoretical_gain_cc(std::uint64_t fake_count, std::uint64_t target_count,
                           std::uint64_t total_nodes, double keep_prob,
                           double avg_perturbed_degree);

/// CSV: one row per target plus a trailing summary row.
void write_gain_csv(std::ostream& out, const GainReport& report);

}  // namespace ldpgraph
