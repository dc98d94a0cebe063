#include "ldpgraph/attacks.hpp"

#include <cmath>
#include <set>

#include "gtest/gtest.h"
#include "ldpgraph/dataset.hpp"
#include "testutil.hpp"

namespace ldpgraph {
namespace {

AttackerKnowledge knowledge(double dbar, NodeId total, double epsilon = 4.0) {
  AttackerKnowledge k;
  k.avg_perturbed_degree = dbar;
  k.params = split_budget(epsilon, 0.5);
  k.total_nodes = total;
  return k;
}

ThreatModel manual_threat(NodeId n, NodeId m, std::vector<NodeId> targets) {
  ThreatModel tm;
  tm.genuine_count = n;
  tm.fake_count = m;
  tm.target_count = static_cast<NodeId>(targets.size());
  tm.total_nodes = n + m;
  tm.targets = std::move(targets);
  return tm;
}

TEST(PlanThreat, CeilingCounts) {
  const ThreatModel tm = plan_threat(4039, 0.05, 0.05, Seed{1});
  EXPECT_EQ(tm.fake_count, 202u);  // ceil(201.95)
  EXPECT_EQ(tm.target_count, 202u);
  EXPECT_EQ(tm.total_nodes, 4241u);

  EXPECT_EQ(plan_threat(100, 0.05, 0.01, Seed{1}).target_count, 1u);
}

TEST(PlanThreat, TargetsAreGenuineDistinctAndSeeded) {
  const ThreatModel a = plan_threat(500, 0.1, 0.08, Seed{77});
  const ThreatModel b = plan_threat(500, 0.1, 0.08, Seed{77});
  EXPECT_EQ(a.targets, b.targets);
  std::set<NodeId> uniq(a.targets.begin(), a.targets.end());
  EXPECT_EQ(uniq.size(), a.targets.size());
  for (NodeId t : a.targets) EXPECT_LT(t, 500u);

  const ThreatModel c = plan_threat(500, 0.1, 0.08, Seed{78});
  EXPECT_NE(a.targets, c.targets);
}

TEST(PlanThreat, RejectsBadFractions) {
  EXPECT_THROW(plan_threat(10, -0.1, 0.5, Seed{1}), std::domain_error);
  EXPECT_THROW(plan_threat(10, 0.5, 1.5, Seed{1}), std::domain_error);
}

TEST(ConnectionBudget, FloorsAverageDegree) {
  EXPECT_EQ(connection_budget(knowledge(4.7, 100)), 4u);
  EXPECT_EQ(connection_budget(knowledge(4.0, 100)), 4u);
  EXPECT_EQ(connection_budget(knowledge(0.2, 100)), 0u);
}

TEST(RvaDegree, RowShape) {
  const ThreatModel tm = manual_threat(9, 1, {0, 1});
  const AttackPlan plan = craft_rva_degree(tm, knowledge(2.0, 10), Seed{5});
  ASSERT_EQ(plan.crafted.size(), 1u);
  EXPECT_EQ(plan.crafted[0].node, 9u);
  EXPECT_EQ(plan.crafted[0].bits.popcount(), 2u);
  EXPECT_FALSE(plan.crafted[0].bits.get(9));
}

TEST(RvaDegree, TargetHitProbability) {
  // cap=4, N=100: a given node receives a given fake's edge w.p. 4/99.
  const ThreatModel tm = manual_threat(99, 1, {17});
  std::uint64_t hits = 0;
  const std::uint64_t trials = 10000;
  for (std::uint64_t s = 0; s < trials; ++s) {
    const AttackPlan plan = craft_rva_degree(tm, knowledge(4.0, 100), Seed{s});
    if (plan.crafted[0].bits.get(17)) ++hits;
  }
  const double rate = static_cast<double>(hits) / static_cast<double>(trials);
  EXPECT_NEAR(rate, 4.0 / 99.0, 0.1 * 4.0 / 99.0);
}

TEST(RvaDegree, EmptyForNoFakes) {
  const ThreatModel tm = manual_threat(10, 0, {1});
  EXPECT_TRUE(craft_rva_degree(tm, knowledge(3.0, 10), Seed{1}).crafted.empty());
}

TEST(RvaDegree, RejectsWholeGraphBudget) {
  const ThreatModel tm = manual_threat(9, 1, {0});
  EXPECT_THROW(craft_rva_degree(tm, knowledge(9.0, 10), Seed{1}),
               std::invalid_argument);
}

TEST(RvaCc, DegreeUniformOverDomain) {
  const NodeId n_total = 1000;
  const ThreatModel tm = manual_threat(n_total - 1, 1, {3});
  std::vector<double> degrees;
  for (std::uint64_t s = 0; s < 100000; ++s) {
    const AttackPlan plan = craft_rva_cc(tm, knowledge(5.0, n_total), Seed{s});
    degrees.push_back(plan.crafted[0].degree);
  }
  const double expected = (n_total - 1.0) / 2.0;
  EXPECT_NEAR(testutil::mean(degrees), expected, 0.01 * expected);
  for (double d : degrees) {
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, n_total - 1.0);
  }
}

TEST(RvaCc, ZeroBudgetMeansEmptyRows) {
  const ThreatModel tm = manual_threat(9, 2, {0});
  const AttackPlan plan = craft_rva_cc(tm, knowledge(0.5, 11), Seed{4});
  for (const Report& r : plan.crafted) EXPECT_EQ(r.bits.popcount(), 0u);
}

TEST(RvaCc, SeededReproducibility) {
  const ThreatModel tm = manual_threat(50, 3, {1, 2});
  const AttackPlan a = craft_rva_cc(tm, knowledge(4.0, 53), Seed{99});
  const AttackPlan b = craft_rva_cc(tm, knowledge(4.0, 53), Seed{99});
  for (NodeId f = 0; f < 3; ++f) {
    EXPECT_EQ(a.crafted[f].bits, b.crafted[f].bits);
    EXPECT_DOUBLE_EQ(a.crafted[f].degree, b.crafted[f].degree);
  }
}

TEST(RnaDegree, SingleTargetBitAtHighBudget) {
  // p ~ 1: the perturbed row equals the intended row, one bit on a target.
  const ThreatModel tm = manual_threat(20, 4, {5, 6, 7});
  const AttackPlan plan = craft_rna_degree(tm, knowledge(3.0, 24, 2e7), Seed{8});
  for (const Report& r : plan.crafted) {
    EXPECT_EQ(r.bits.popcount(), 1u);
    bool on_target = false;
    for (NodeId t : tm.targets) on_target |= r.bits.get(t);
    EXPECT_TRUE(on_target);
  }
}

TEST(RnaDegree, TargetBitSurvivesPerturbationAtRateP) {
  const double epsilon = 4.0;  // p ~ 0.881 on the bit vector
  const double p = split_budget(epsilon, 0.5).keep_prob;
  const ThreatModel tm = manual_threat(99, 1, {42});
  std::uint64_t kept = 0;
  const std::uint64_t trials = 10000;
  for (std::uint64_t s = 0; s < trials; ++s) {
    const AttackPlan plan = craft_rna_degree(tm, knowledge(4.0, 100, epsilon), Seed{s});
    if (plan.crafted[0].bits.get(42)) ++kept;
  }
  EXPECT_NEAR(static_cast<double>(kept) / static_cast<double>(trials), p, 0.02);
}

TEST(RnaDegree, AllFakesShareTheOnlyTarget) {
  const ThreatModel tm = manual_threat(30, 3, {11});
  const AttackPlan plan = craft_rna_degree(tm, knowledge(3.0, 33, 2e7), Seed{2});
  for (const auto& [fake, target] : plan.fake_target_links) EXPECT_EQ(target, 11u);
  EXPECT_EQ(plan.fake_target_links.size(), 3u);
}

TEST(RnaDegree, NonTargetBitsFlipAtRateOneMinusP) {
  const double epsilon = 4.0;
  const double p = split_budget(epsilon, 0.5).keep_prob;
  const NodeId n_total = 200;
  const ThreatModel tm = manual_threat(n_total - 2, 2, {9});
  std::uint64_t flipped = 0, total = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const AttackPlan plan =
        craft_rna_degree(tm, knowledge(5.0, n_total, epsilon), Seed{s});
    for (const Report& r : plan.crafted) {
      const NodeId target = 9;
      for (NodeId j = 0; j < n_total; ++j) {
        if (j == r.node || j == target) continue;
        ++total;
        if (r.bits.get(j)) ++flipped;  // intended bit was 0
      }
    }
  }
  EXPECT_NEAR(static_cast<double>(flipped) / static_cast<double>(total), 1.0 - p,
              0.01);
}

TEST(RnaCc, DegreeGapFollowsLaplace) {
  // |d~ - crafted popcount| should look like |Laplace(2/eps2)|.
  const double epsilon = 4.0;  // eps2 = 2, scale = 1
  const ThreatModel tm = manual_threat(50, 1, {3});
  std::vector<double> gaps;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const AttackPlan plan = craft_rna_cc(tm, knowledge(4.0, 51, epsilon), Seed{s});
    gaps.push_back(plan.crafted[0].degree - 1.0);  // fresh fake: one crafted bit
  }
  const double ks = testutil::ks_statistic(
      std::move(gaps), [](double x) { return testutil::laplace_cdf(x, 1.0); });
  // 1.63 / sqrt(n) is the 1% critical value.
  EXPECT_LT(ks, 1.63 / std::sqrt(10000.0));
}

TEST(MgaDegree, ConnectsAllTargetsWhenBudgetAllows) {
  const ThreatModel tm = manual_threat(40, 5, {1, 2, 3});
  const AttackPlan plan = craft_mga_degree(tm, knowledge(5.0, 45), Seed{31});
  for (const Report& r : plan.crafted) {
    EXPECT_EQ(r.bits.popcount(), 3u);
    for (NodeId t : tm.targets) EXPECT_TRUE(r.bits.get(t));
  }
}

TEST(MgaDegree, CapLimitsTargets) {
  std::vector<NodeId> targets;
  for (NodeId t = 0; t < 10; ++t) targets.push_back(t);
  const ThreatModel tm = manual_threat(50, 4, targets);
  const AttackPlan plan = craft_mga_degree(tm, knowledge(4.0, 54), Seed{13});
  for (const Report& r : plan.crafted) EXPECT_EQ(r.bits.popcount(), 4u);
  EXPECT_EQ(plan.fake_target_links.size(), 4u * 4u);
}

TEST(MgaDegree, LinkCountIsExactlyMTimesMin) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ThreatModel tm = plan_threat(200, 0.04, 0.06, Seed{s});
    const AttackPlan plan = craft_mga_degree(tm, knowledge(7.3, tm.total_nodes), Seed{s});
    const std::uint64_t expected =
        static_cast<std::uint64_t>(tm.fake_count) *
        std::min<std::uint64_t>(tm.target_count, 7);
    EXPECT_EQ(plan.fake_target_links.size(), expected);
  }
}

TEST(MgaCc, PairConstructionMinimalCase) {
  // m=2, r=1, cap=2: edges {f1-f2, f1-t, f2-t}; the target gains one triangle.
  const ThreatModel tm = manual_threat(10, 2, {4});
  const AttackPlan plan = craft_mga_cc(tm, knowledge(2.0, 12), Seed{3});
  ASSERT_EQ(plan.crafted.size(), 2u);
  const Report& f1 = plan.crafted[0];
  const Report& f2 = plan.crafted[1];
  EXPECT_TRUE(f1.bits.get(11));  // fake-fake edge
  EXPECT_TRUE(f2.bits.get(10));
  EXPECT_TRUE(f1.bits.get(4));
  EXPECT_TRUE(f2.bits.get(4));
  EXPECT_EQ(f1.bits.popcount(), 2u);
  EXPECT_EQ(f2.bits.popcount(), 2u);
}

TEST(MgaCc, PairCoversThreeTargets) {
  // m=2, r=3, cap=4: the pair connects to all three targets; together with
  // the fake-fake edge that is three crafted triangles, one per target.
  const ThreatModel tm = manual_threat(10, 2, {1, 2, 3});
  const AttackPlan plan = craft_mga_cc(tm, knowledge(4.0, 12), Seed{3});
  std::uint64_t triangles = 0;
  for (NodeId t : tm.targets) {
    if (plan.crafted[0].bits.get(t) && plan.crafted[1].bits.get(t)) ++triangles;
  }
  EXPECT_EQ(triangles, 3u);
  EXPECT_EQ(plan.crafted[0].bits.popcount(), 4u);  // 3 targets + partner
}

TEST(MgaCc, BudgetInvariantAcrossSeeds) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ThreatModel tm = plan_threat(120, 0.1, 0.1, Seed{s});
    const auto k = knowledge(5.6, tm.total_nodes);
    const std::uint32_t cap = connection_budget(k);
    for (const AttackPlan& plan :
         {craft_mga_cc(tm, k, Seed{s}), craft_mga_degree(tm, k, Seed{s}),
          craft_rva_degree(tm, k, Seed{s})}) {
      for (const Report& r : plan.crafted) {
        EXPECT_LE(r.bits.popcount(), cap);
      }
    }
  }
}

TEST(MgaCc, PairsNeverCrossAndTrianglesHaveOneTarget) {
  const ThreatModel tm = plan_threat(300, 0.04, 0.05, Seed{17});
  const auto k = knowledge(6.9, tm.total_nodes);
  const AttackPlan plan = craft_mga_cc(tm, k, Seed{17});
  std::set<NodeId> target_set(tm.targets.begin(), tm.targets.end());

  for (NodeId f = 0; f < tm.fake_count; ++f) {
    const Report& r = plan.crafted[f];
    r.bits.for_each_set([&](std::size_t j) {
      const auto v = static_cast<NodeId>(j);
      if (tm.is_fake(v)) {
        // Fake-fake edges stay inside a pair.
        const NodeId self = r.node - tm.first_fake();
        const NodeId other = v - tm.first_fake();
        EXPECT_EQ(self / 2, other / 2);
        EXPECT_NE(self, other);
      } else {
        EXPECT_TRUE(target_set.count(v)) << "non-target genuine claim";
      }
    });
  }

  // Triangles in the crafted subgraph contain exactly one target: both pair
  // members claim the same targets and never claim other fakes.
  for (NodeId pair = 0; pair < tm.fake_count / 2; ++pair) {
    const Report& a = plan.crafted[2 * pair];
    const Report& b = plan.crafted[2 * pair + 1];
    a.bits.for_each_set([&](std::size_t j) {
      if (!tm.is_fake(static_cast<NodeId>(j))) {
        EXPECT_TRUE(b.bits.get(j));
      }
    });
  }
}

TEST(MgaCc, DegeneratesToDegreeCraftingWhenTooSmall) {
  const ThreatModel tm = manual_threat(10, 1, {2, 3});
  const AttackPlan plan = craft_mga_cc(tm, knowledge(5.0, 11), Seed{9});
  EXPECT_EQ(plan.metric, MetricKind::kClusteringCoefficient);
  ASSERT_EQ(plan.crafted.size(), 1u);
  EXPECT_EQ(plan.crafted[0].bits.popcount(), 2u);  // plain target bits
}

TEST(CompromisedFakes, SeededDensityAndSymmetry) {
  ThreatModel tm = plan_threat(400, 0.1, 0.05, Seed{4}, FakeInit::kCompromised);
  const auto k = knowledge(30.0, tm.total_nodes);
  seed_compromised_fakes(tm, k, Seed{4});
  ASSERT_EQ(tm.fake_initial_rows.size(), tm.fake_count);

  double total_bits = 0;
  for (const BitRow& row : tm.fake_initial_rows) {
    total_bits += static_cast<double>(row.popcount());
  }
  const double per_fake = total_bits / tm.fake_count;
  EXPECT_NEAR(per_fake, 30.0, 5.0);

  // Fake-fake entries agree between the two rows.
  for (NodeId a = 0; a < tm.fake_count; ++a) {
    for (NodeId b = a + 1; b < tm.fake_count; ++b) {
      EXPECT_EQ(tm.fake_initial_rows[a].get(tm.first_fake() + b),
                tm.fake_initial_rows[b].get(tm.first_fake() + a));
    }
  }

  const Graph base = attack_base_graph(random_graph(400, 0.02, Seed{6}), tm);
  EXPECT_EQ(base.num_nodes(), tm.total_nodes);
}

}  // namespace
}  // namespace ldpgraph
