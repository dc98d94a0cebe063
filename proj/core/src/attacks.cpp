#include "ldpgraph/attacks.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace ldpgraph {

namespace {

NodeId ceil_fraction(NodeId n, double frac) {
  return static_cast<NodeId>(std::ceil(frac * static_cast<double>(n)));
}

double crafted_degree_report(double true_degree, const AttackerKnowledge& k,
                             Seed seed, NodeId node) {
  if (!(k.params.epsilon2 > 0.0)) {
    throw std::domain_error("crafted degree report: epsilon2 must be positive");
  }
  const double u = uniform01(seed, Stream::kAttackDegree, node);
  return true_degree + laplace_from_unit(u, 2.0 / k.params.epsilon2);
}

/// `count` distinct values from [0, n) \ {self}, in draw order.
std::vector<NodeId> sample_distinct_excluding(SubRng& rng, NodeId n, NodeId self,
                                              std::uint32_t count) {
  std::vector<NodeId> out;
  out.reserve(count);
  BitRow taken(n);
  taken.set(self);
  while (out.size() < count) {
    const auto v = static_cast<NodeId>(rng.below(n));
    if (taken.get(v)) continue;
    taken.set(v);
    out.push_back(v);
  }
  return out;
}

/// `count` distinct positions into `pool`, partial Fisher-Yates.
std::vector<NodeId> sample_from_pool(SubRng& rng, std::span<const NodeId> pool,
                                     std::uint32_t count) {
  std::vector<NodeId> scratch(pool.begin(), pool.end());
  std::vector<NodeId> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(scratch.size() - i));
    std::swap(scratch[i], scratch[j]);
    out.push_back(scratch[i]);
  }
  return out;
}

AttackPlan empty_plan(AttackKind kind, MetricKind metric, std::uint32_t cap) {
  AttackPlan plan;
  plan.kind = kind;
  plan.metric = metric;
  plan.budget_cap = cap;
  return plan;
}

const BitRow* initial_row(const ThreatModel& tm, NodeId fake_index) {
  if (tm.fake_initial_rows.empty()) return nullptr;
  return &tm.fake_initial_rows[fake_index];
}

}  // namespace

ThreatModel plan_threat(NodeId genuine_count, double beta, double gamma, Seed seed,
                        FakeInit init) {
  if (genuine_count == 0) {
    throw std::invalid_argument("plan_threat: need at least one genuine user");
  }
  if (beta < 0.0 || beta > 1.0 || gamma < 0.0 || gamma > 1.0) {
    throw std::domain_error("plan_threat: beta and gamma must lie in [0, 1]");
  }
  ThreatModel tm;
  tm.genuine_count = genuine_count;
  tm.beta = beta;
  tm.gamma = gamma;
  tm.fake_count = ceil_fraction(genuine_count, beta);
  tm.target_count = ceil_fraction(genuine_count, gamma);
  tm.total_nodes = genuine_count + tm.fake_count;
  tm.fake_init = init;
  if (tm.target_count > genuine_count) {
    throw std::invalid_argument("plan_threat: more targets than genuine users");
  }

  std::vector<NodeId> genuine(genuine_count);
  for (NodeId i = 0; i < genuine_count; ++i) genuine[i] = i;
  SubRng rng(seed, Stream::kTargetSample, 0);
  tm.targets = sample_from_pool(rng, genuine, tm.target_count);
  return tm;
}

std::uint32_t connection_budget(const AttackerKnowledge& k) {
  if (k.avg_perturbed_degree < 0.0) {
    throw std::domain_error("connection_budget: average degree must be nonnegative");
  }
  return static_cast<std::uint32_t>(std::floor(k.avg_perturbed_degree));
}

void seed_compromised_fakes(ThreatModel& tm, const AttackerKnowledge& k, Seed seed) {
  const NodeId n_total = tm.total_nodes;
  tm.fake_initial_rows.assign(tm.fake_count, BitRow(n_total));
  if (tm.fake_init == FakeInit::kFresh || n_total < 2) return;

  const double density = k.avg_perturbed_degree / (n_total - 1.0);
  for (NodeId f = 0; f < tm.fake_count; ++f) {
    const NodeId u = tm.first_fake() + f;
    for (NodeId j = 0; j < n_total; ++j) {
      if (j == u) continue;
      const NodeId lo = std::min(u, j);
      const NodeId hi = std::max(u, j);
      if (uniform01(seed, Stream::kFakeInit, lo, hi) < density) {
        tm.fake_initial_rows[f].set(j);
      }
    }
  }
}

Graph attack_base_graph(const Graph& genuine, const ThreatModel& tm) {
  if (genuine.num_nodes() != tm.genuine_count) {
    throw std::invalid_argument("attack_base_graph: graph size does not match threat model");
  }
  GraphBuilder builder(tm.total_nodes);
  for (NodeId i = 0; i < genuine.num_nodes(); ++i) {
    genuine.row(i).for_each_set([&](std::size_t j) {
      if (j > i) builder.add_edge(i, static_cast<NodeId>(j));
    });
  }
  for (NodeId f = 0; f < tm.fake_initial_rows.size(); ++f) {
    const NodeId u = tm.first_fake() + f;
    tm.fake_initial_rows[f].for_each_set(
        [&](std::size_t j) { builder.add_edge(u, static_cast<NodeId>(j)); });
  }
  return std::move(builder).build();
}

AttackPlan craft_rva_degree(const ThreatModel& tm, const AttackerKnowledge& k,
                            Seed seed) {
  const std::uint32_t cap = connection_budget(k);
  const NodeId n_total = tm.total_nodes;
  if (cap > 0 && cap >= n_total - 1) {
    throw std::invalid_argument("craft_rva_degree: budget covers the whole graph");
  }
  AttackPlan plan = empty_plan(AttackKind::kRva, MetricKind::kDegreeCentrality, cap);
  for (NodeId f = 0; f < tm.fake_count; ++f) {
    const NodeId u = tm.first_fake() + f;
    Report r;
    r.node = u;
    r.bits = BitRow(n_total);
    SubRng rng(seed, Stream::kAttackChoice, u);
    for (NodeId v : sample_distinct_excluding(rng, n_total, u, cap)) {
      r.bits.set(v);
    }
    r.degree = crafted_degree_report(cap, k, seed, u);
    plan.crafted.push_back(std::move(r));
  }
  return plan;
}

AttackPlan craft_rna_degree(const ThreatModel& tm, const AttackerKnowledge& k,
                            Seed seed) {
  AttackPlan plan = empty_plan(AttackKind::kRna, MetricKind::kDegreeCentrality,
                               connection_budget(k));
  if (tm.target_count == 0) return plan;
  const NodeId n_total = tm.total_nodes;
  const double p = k.params.keep_prob;
  for (NodeId f = 0; f < tm.fake_count; ++f) {
    const NodeId u = tm.first_fake() + f;
    SubRng rng(seed, Stream::kAttackChoice, u);
    const NodeId target = tm.targets[rng.below(tm.targets.size())];

    BitRow intended(n_total);
    if (const BitRow* init = initial_row(tm, f)) intended = *init;
    intended.set(target);
    intended.clear(u);
    const double true_degree = static_cast<double>(intended.popcount());

    Report r;
    r.node = u;
    r.bits = BitRow(n_total);
    // The crafted edge and any pre-existing ones go through the same
    // randomized response an honest client would apply.
    for (NodeId j = 0; j < n_total; ++j) {
      if (j == u) continue;
      const bool keep = uniform01(seed, Stream::kAttackRow, u, j) < p;
      if (keep ? intended.get(j) : !intended.get(j)) r.bits.set(j);
    }
    r.degree = crafted_degree_report(true_degree, k, seed, u);
    plan.fake_target_links.emplace_back(u, target);
    plan.crafted.push_back(std::move(r));
  }
  return plan;
}

AttackPlan craft_mga_degree(const ThreatModel& tm, const AttackerKnowledge& k,
                            Seed seed) {
  const std::uint32_t cap = connection_budget(k);
  AttackPlan plan = empty_plan(AttackKind::kMga, MetricKind::kDegreeCentrality, cap);
  const auto connections =
      static_cast<std::uint32_t>(std::min<std::uint64_t>(tm.target_count, cap));
  for (NodeId f = 0; f < tm.fake_count; ++f) {
    const NodeId u = tm.first_fake() + f;
    Report r;
    r.node = u;
    r.bits = BitRow(tm.total_nodes);
    SubRng rng(seed, Stream::kAttackChoice, u);
    for (NodeId t : sample_from_pool(rng, tm.targets, connections)) {
      r.bits.set(t);
      plan.fake_target_links.emplace_back(u, t);
    }
    r.degree = crafted_degree_report(connections, k, seed, u);
    plan.crafted.push_back(std::move(r));
  }
  return plan;
}

AttackPlan craft_rva_cc(const ThreatModel& tm, const AttackerKnowledge& k, Seed seed) {
  AttackPlan plan = craft_rva_degree(tm, k, seed);
  plan.metric = MetricKind::kClusteringCoefficient;
  // Degree report drawn uniformly from the whole degree space [0, N-1].
  for (NodeId f = 0; f < tm.fake_count; ++f) {
    const NodeId u = tm.first_fake() + f;
    SubRng rng(seed, Stream::kAttackDegree, u);
    plan.crafted[f].degree = static_cast<double>(rng.below(tm.total_nodes));
  }
  return plan;
}

AttackPlan craft_rna_cc(const ThreatModel& tm, const AttackerKnowledge& k, Seed seed) {
  AttackPlan plan = craft_rna_degree(tm, k, seed);
  plan.metric = MetricKind::kClusteringCoefficient;
  return plan;
}

AttackPlan craft_mga_cc(const ThreatModel& tm, const AttackerKnowledge& k, Seed seed) {
  const std::uint32_t cap = connection_budget(k);
  if (cap < 2 || tm.fake_count < 2) {
    std::cerr << "warning: MGA-cc needs cap >= 2 and m >= 2 "
              << "(cap=" << cap << ", m=" << tm.fake_count
              << "); falling back to MGA-degree crafting\n";
    AttackPlan plan = craft_mga_degree(tm, k, seed);
    plan.metric = MetricKind::kClusteringCoefficient;
    return plan;
  }
  AttackPlan plan =
      empty_plan(AttackKind::kMga, MetricKind::kClusteringCoefficient, cap);
  if (tm.fake_count == 0) return plan;

  plan.crafted.resize(tm.fake_count);
  for (NodeId f = 0; f < tm.fake_count; ++f) {
    plan.crafted[f].node = tm.first_fake() + f;
    plan.crafted[f].bits = BitRow(tm.total_nodes);
  }

  // Pairs of fakes share one fake-fake edge plus the same target set; every
  // shared target closes one triangle through the pair.
  const auto per_pair = static_cast<std::uint32_t>(
      std::min<std::uint64_t>(cap - 1, tm.target_count));
  std::size_t cursor = 0;
  const NodeId pairs = tm.fake_count / 2;
  for (NodeId pair = 0; pair < pairs; ++pair) {
    const NodeId a = 2 * pair;
    const NodeId b = 2 * pair + 1;
    plan.crafted[a].bits.set(plan.crafted[b].node);
    plan.crafted[b].bits.set(plan.crafted[a].node);
    for (std::uint32_t i = 0; i < per_pair && tm.target_count > 0; ++i) {
      const NodeId t = tm.targets[(cursor + i) % tm.targets.size()];
      plan.crafted[a].bits.set(t);
      plan.crafted[b].bits.set(t);
      plan.fake_target_links.emplace_back(plan.crafted[a].node, t);
      plan.fake_target_links.emplace_back(plan.crafted[b].node, t);
    }
    cursor += per_pair;
  }
  if (tm.fake_count % 2 == 1) {
    // Leftover fake cannot form a pair; fall back to plain target bits.
    const NodeId f = tm.fake_count - 1;
    const NodeId u = plan.crafted[f].node;
    SubRng rng(seed, Stream::kAttackChoice, u);
    const auto connections =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(tm.target_count, cap));
    for (NodeId t : sample_from_pool(rng, tm.targets, connections)) {
      plan.crafted[f].bits.set(t);
      plan.fake_target_links.emplace_back(u, t);
    }
  }
  for (NodeId f = 0; f < tm.fake_count; ++f) {
    const NodeId u = plan.crafted[f].node;
    plan.crafted[f].degree = crafted_degree_report(
        static_cast<double>(plan.crafted[f].bits.popcount()), k, seed, u);
  }
  return plan;
}

AttackPlan craft_attack(AttackKind kind, MetricKind metric, const ThreatModel& tm,
                        const AttackerKnowledge& k, Seed seed) {
  if (metric == MetricKind::kDegreeCentrality) {
    switch (kind) {
      case AttackKind::kRva: return craft_rva_degree(tm, k, seed);
      case AttackKind::kRna: return craft_rna_degree(tm, k, seed);
      case AttackKind::kMga: return craft_mga_degree(tm, k, seed);
    }
  } else {
    switch (kind) {
      case AttackKind::kRva: return craft_rva_cc(tm, k, seed);
      case AttackKind::kRna: return craft_rna_cc(tm, k, seed);
      case AttackKind::kMga: return craft_mga_cc(tm, k, seed);
    }
  }
  throw std::logic_error("craft_attack: unknown attack kind");
}

}  // namespace ldpgraph
