#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ldpgraph/estimator.hpp"
#include "ldpgraph/ldp.hpp"

namespace ldpgraph {

enum class AttackKind { kRva, kRna, kMga };

enum class FakeInit {
  kFresh,        // fake identities start with no edges
  kCompromised,  // fakes carry random pre-existing edges of average density
};

/// Who attacks whom: n genuine users, m = ceil(beta n) fakes appended as ids
/// [n, N), r = ceil(gamma n) targets sampled from the genuine nodes.
struct ThreatModel {
  NodeId genuine_count = 0;  // n
  double beta = 0.0;
  double gamma = 0.0;
  NodeId fake_count = 0;    // m
  NodeId target_count = 0;  // r
  NodeId total_nodes = 0;   // N = n + m
  std::vector<NodeId> targets;
  FakeInit fake_init = FakeInit::kFresh;
  // Pre-existing edges of each fake node (row length N). Empty rows in fresh
  // mode; filled by seed_compromised_fakes otherwise.
  std::vector<BitRow> fake_initial_rows;

  NodeId first_fake() const { return genuine_count; }
  bool is_fake(NodeId i) const { return i >= genuine_count; }
};

ThreatModel plan_threat(NodeId genuine_count, double beta, double gamma, Seed seed,
                        FakeInit init = FakeInit::kFresh);

/// What the attacker knows about the deployed protocol and graph.
struct AttackerKnowledge {
  double avg_perturbed_degree = 0.0;  // mean row degree of the perturbed graph
  PrivacyParams params;
  NodeId total_nodes = 0;
};

/// Per-fake-node connection cap: floor of the average perturbed degree.
std::uint32_t connection_budget(const AttackerKnowledge& k);

/// Fills tm.fake_initial_rows. Compromised fakes get independent random
/// edges of density avg_perturbed_degree / (N-1); one trial per unordered
/// pair so the implied graph is symmetric.
void seed_compromised_fakes(ThreatModel& tm, const AttackerKnowledge& k, Seed seed);

/// Baseline world: the genuine graph plus fake nodes with their initial edges.
Graph attack_base_graph(const Graph& genuine, const ThreatModel& tm);

/// Crafted fake reports. On the wire these are indistinguishable from honest
/// ones; the connection matrix and cap are kept alongside for analysis.
struct AttackPlan {
  AttackKind kind = AttackKind::kMga;
  MetricKind metric = MetricKind::kDegreeCentrality;
  std::vector<Report> crafted;  // one per fake id, ordered
  std::vector<std::pair<NodeId, NodeId>> fake_target_links;  // x_ut = 1
  std::uint32_t budget_cap = 0;
};

// Degree-centrality attacks.
AttackPlan craft_rva_degree(const ThreatModel& tm, const AttackerKnowledge& k, Seed seed);
AttackPlan craft_rna_degree(const ThreatModel& tm, const AttackerKnowledge& k, Seed seed);
AttackPlan craft_mga_degree(const ThreatModel& tm, const AttackerKnowledge& k, Seed seed);

// Clustering-coefficient attacks.
AttackPlan craft_rva_cc(const ThreatModel& tm, const AttackerKnowledge& k, Seed seed);
AttackPlan craft_rna_cc(const ThreatModel& tm, const AttackerKnowledge& k, Seed seed);
AttackPlan craft_mga_cc(const ThreatModel& tm, const AttackerKnowledge& k, Seed seed);

AttackPlan craft_attack(AttackKind kind, MetricKind metric, const ThreatModel& tm,
                        const AttackerKnowledge& k, Seed seed);

}  // namespace ldpgraph
