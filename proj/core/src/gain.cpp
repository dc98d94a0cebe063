#include "ldpgraph/gain.hpp"

#include <cmath>
#include <stdexcept>

namespace ldpgraph {

namespace {

Graph genuine_subgraph(const Graph& g_base, NodeId genuine_count) {
  GraphBuilder builder(genuine_count);
  for (NodeId i = 0; i < genuine_count; ++i) {
    g_base.row(i).for_each_set([&](std::size_t j) {
      if (j > i && j < genuine_count) builder.add_edge(i, static_cast<NodeId>(j));
    });
  }
  return std::move(builder).build();
}

}  // namespace

double estimate_target_metric(const PerturbedGraph& pg,
                              std::span<const Report> reports, MetricKind metric,
                              double keep_prob, NodeId target) {
  if (metric == MetricKind::kDegreeCentrality) {
    return estimate_degree_centrality(pg, keep_prob, target).value;
  }
  return estimate_clustering_coefficient(pg, reports, keep_prob, target)
      .estimate.value;
}

AttackRun run_attack_collection(const Graph& g_base, const ThreatModel& tm,
                                const AttackPlan& plan, const PrivacyParams& params,
                                Seed seed, const GainOptions& options) {
  if (g_base.num_nodes() != tm.total_nodes) {
    throw std::invalid_argument("run_attack_collection: baseline graph has wrong node count");
  }
  if (!plan.crafted.empty() && plan.crafted.size() != tm.fake_count) {
    throw std::invalid_argument("run_attack_collection: plan does not match threat model");
  }

  AttackRun run;
  // Baseline: every identity, fake ones included, follows the protocol.
  run.baseline_reports = collect_reports(g_base, params, options.mode, seed);
  run.baseline_graph = assemble_perturbed_graph(run.baseline_reports, options.mode);

  // Attack: identical genuine randomness when paired; fake reports replaced
  // by the crafted ones.
  if (options.paired) {
    run.attack_reports = run.baseline_reports;
  } else {
    const Seed attack_seed{splitmix64(seed.root ^ 0x9d5c0d5eULL)};
    run.attack_reports = collect_reports(g_base, params, options.mode, attack_seed);
  }
  for (const Report& crafted : plan.crafted) {
    run.attack_reports[crafted.node] = crafted;
  }
  run.attack_graph = assemble_perturbed_graph(run.attack_reports, options.mode);
  return run;
}

GainReport gain_from_run(const AttackRun& run, const ThreatModel& tm,
                         const AttackPlan& plan, double keep_prob) {
  GainReport report;
  report.metric = plan.metric;
  report.attack = plan.kind;
  report.targets.reserve(tm.targets.size());
  for (NodeId t : tm.targets) {
    TargetGain tg;
    tg.target = t;
    tg.before = estimate_target_metric(run.baseline_graph, run.baseline_reports,
                                       plan.metric, keep_prob, t);
    tg.after = estimate_target_metric(run.attack_graph, run.attack_reports,
                                      plan.metric, keep_prob, t);
    tg.delta = std::abs(tg.after - tg.before);
    report.total += tg.delta;
    report.targets.push_back(tg);
  }
  return report;
}

GainReport empirical_gain(const Graph& g_base, const ThreatModel& tm,
                          const AttackPlan& plan, const PrivacyParams& params,
                          Seed seed, const GainOptions& options) {
  if (!options.genuine_only_baseline) {
    const AttackRun run = run_attack_collection(g_base, tm, plan, params, seed, options);
    return gain_from_run(run, tm, plan, params.keep_prob);
  }

  // Alternative baseline: only the n genuine users participate, so estimates
  // are taken over n identities instead of N.
  if (g_base.num_nodes() != tm.total_nodes) {
    throw std::invalid_argument("empirical_gain: baseline graph has wrong node count");
  }
  const Graph genuine = genuine_subgraph(g_base, tm.genuine_count);
  const std::vector<Report> base_reports =
      collect_reports(genuine, params, options.mode, seed);
  const PerturbedGraph base_pg = assemble_perturbed_graph(base_reports, options.mode);

  const Seed attack_seed =
      options.paired ? seed : Seed{splitmix64(seed.root ^ 0x9d5c0d5eULL)};
  std::vector<Report> attack_reports =
      collect_reports(g_base, params, options.mode, attack_seed);
  for (const Report& crafted : plan.crafted) {
    attack_reports[crafted.node] = crafted;
  }
  const PerturbedGraph attack_pg = assemble_perturbed_graph(attack_reports, options.mode);

  GainReport report;
  report.metric = plan.metric;
  report.attack = plan.kind;
  report.targets.reserve(tm.targets.size());
  for (NodeId t : tm.targets) {
    TargetGain tg;
    tg.target = t;
    tg.before =
        estimate_target_metric(base_pg, base_reports, plan.metric, params.keep_prob, t);
    tg.after = estimate_target_metric(attack_pg, attack_reports, plan.metric,
                                      params.keep_prob, t);
    tg.delta = std::abs(tg.after - tg.before);
    report.total += tg.delta;
    report.targets.push_back(tg);
  }
  return report;
}

namespace {

/// Shared pair loop for the streaming paths. `on_pair(i, j, base_edge,
/// attack_edge)` is invoked for every unordered pair.
template <typename Fn>
void stream_pairs(const Graph& genuine, const ThreatModel& tm,
                  std::span<const BitRow* const> crafted, double keep_prob,
                  Seed seed, CollectionMode mode, Fn&& on_pair) {
  const NodeId n = tm.total_nodes;
  const NodeId genuine_n = genuine.num_nodes();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const bool bit = j < genuine_n && genuine.has_edge(i, j);
      bool claim_ij, claim_ji;
      if (mode == CollectionMode::kSynchronizedPair) {
        const bool kept =
            uniform01(seed, Stream::kPairTrial, i, j) < keep_prob ? bit : !bit;
        claim_ij = claim_ji = kept;
      } else {
        claim_ij =
            uniform01(seed, Stream::kDirectedTrial, i, j) < keep_prob ? bit : !bit;
        claim_ji =
            uniform01(seed, Stream::kDirectedTrial, j, i) < keep_prob ? bit : !bit;
      }
      const bool base_edge = claim_ij || claim_ji;
      const bool a_ij = crafted[i] ? crafted[i]->get(j) : claim_ij;
      const bool a_ji = crafted[j] ? crafted[j]->get(i) : claim_ji;
      on_pair(i, j, base_edge, a_ij || a_ji);
    }
  }
}

void require_fresh_streaming(const Graph& genuine, const ThreatModel& tm) {
  if (genuine.num_nodes() != tm.genuine_count) {
    throw std::invalid_argument("streaming gain expects the genuine graph");
  }
  if (tm.fake_init != FakeInit::kFresh) {
    throw std::invalid_argument("streaming gain supports fresh fakes only");
  }
}

}  // namespace

GainReport empirical_gain_streaming_degree(const Graph& genuine,
                                           const ThreatModel& tm,
                                           const AttackPlan& plan,
                                           const PrivacyParams& params, Seed seed,
                                           CollectionMode mode) {
  if (plan.metric != MetricKind::kDegreeCentrality) {
    throw std::invalid_argument("streaming gain supports the degree metric only");
  }
  require_fresh_streaming(genuine, tm);
  const NodeId n = tm.total_nodes;
  const double p = params.keep_prob;
  if (!(p > 0.5)) throw std::domain_error("streaming gain requires p > 0.5");

  // crafted[u] is null for honest identities.
  std::vector<const BitRow*> crafted(n, nullptr);
  for (const Report& r : plan.crafted) crafted[r.node] = &r.bits;

  std::vector<std::uint32_t> deg_base(n, 0), deg_attack(n, 0);
  stream_pairs(genuine, tm, crafted, p, seed, mode,
               [&](NodeId i, NodeId j, bool base_edge, bool attack_edge) {
                 if (base_edge) {
                   ++deg_base[i];
                   ++deg_base[j];
                 }
                 if (attack_edge) {
                   ++deg_attack[i];
                   ++deg_attack[j];
                 }
               });

  GainReport report;
  report.metric = plan.metric;
  report.attack = plan.kind;
  const double n1 = static_cast<double>(n) - 1.0;
  report.targets.reserve(tm.targets.size());
  for (NodeId t : tm.targets) {
    TargetGain tg;
    tg.target = t;
    tg.before = (deg_base[t] - n1 * (1.0 - p)) / (2.0 * p - 1.0) / n1;
    tg.after = (deg_attack[t] - n1 * (1.0 - p)) / (2.0 * p - 1.0) / n1;
    tg.delta = std::abs(tg.after - tg.before);
    report.total += tg.delta;
    report.targets.push_back(tg);
  }
  return report;
}

double streaming_avg_perturbed_degree(const Graph& genuine, const ThreatModel& tm,
                                      const PrivacyParams& params, Seed seed,
                                      CollectionMode mode) {
  require_fresh_streaming(genuine, tm);
  const NodeId n = tm.total_nodes;
  if (!(params.keep_prob > 0.5)) {
    throw std::domain_error("streaming collection requires p > 0.5");
  }
  std::vector<const BitRow*> crafted(n, nullptr);
  std::uint64_t total = 0;
  stream_pairs(genuine, tm, crafted, params.keep_prob, seed, mode,
               [&](NodeId, NodeId, bool base_edge, bool) {
                 if (base_edge) total += 2;
               });
  return static_cast<double>(total) / static_cast<double>(n);
}

double theoretical_gain_degree(std::uint64_t fake_count, std::uint64_t target_count,
                               std::uint64_t total_nodes,
                               double avg_perturbed_degree) {
  if (total_nodes < 2) {
    throw std::domain_error("theoretical_gain_degree: need at least 2 nodes");
  }
  if (fake_count == 0 || target_count == 0) return 0.0;
  const double m = static_cast<double>(fake_count);
  const double r = static_cast<double>(target_count);
  const double n1 = static_cast<double>(total_nodes) - 1.0;
  const double dbar = avg_perturbed_degree;
  const double new_per_fake = std::min(r, std::floor(dbar));
  return (m * r / n1) * (new_per_fake / r - dbar / n1);
}

double theoretical_gain_cc(std::uint64_t fake_count, std::uint64_t target_count,
                           std::uint64_t total_nodes, double keep_prob,
                           double avg_perturbed_degree) {
  if (!(keep_prob > 0.5)) {
    throw std::domain_error("theoretical_gain_cc: requires p > 0.5");
  }
  if (!(avg_perturbed_degree > 1.0)) {
    throw std::domain_error("theoretical_gain_cc: requires average degree > 1");
  }
  if (total_nodes < 2) {
    throw std::domain_error("theoretical_gain_cc: need at least 2 nodes");
  }
  const double m = static_cast<double>(fake_count);
  const double r = static_cast<double>(target_count);
  const double p = keep_prob;
  const double dbar = avg_perturbed_degree;
  const double pp = dbar / (static_cast<double>(total_nodes) - 1.0);
  const double one = 1.0 - pp;
  const double triangle_prob =
      2.0 * pp * one * one + pp * pp * one + 3.0 * one * one * one;
  return r * (2.0 / (p * p * (2.0 * p - 1.0))) * (1.0 / (dbar * (dbar - 1.0))) *
         (m / triangle_prob);
}

void write_gain_csv(std::ostream& out, const GainReport& report) {
  out << "target,before,after,delta\n";
  for (const TargetGain& tg : report.targets) {
    out << tg.target << ',' << tg.before << ',' << tg.after << ',' << tg.delta
        << '\n';
  }
  out << "total,,," << report.total << '\n';
}

}  // namespace ldpgraph
