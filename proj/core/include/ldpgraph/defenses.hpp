#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "ldpgraph/ldp.hpp"

namespace ldpgraph {

struct DetectorConfig {
  std::uint32_t min_support = 0;       // 0: use ceil(0.01 N) at detection time
  std::uint32_t max_itemset_size = 3;
  double itemset_threshold = 100.0;    // flag when frequent-itemset count exceeds it
  double degree_gap_threshold = 0.0;   // 0: max_i dhat_i + 3 sigma rule
  double naive_fraction = 0.03;
};

struct Itemset {
  std::vector<NodeId> items;  // ascending
  std::uint32_t support = 0;
};

/// Classic level-wise Apriori over the reported neighbor sets. Returns all
/// itemsets of size in [2, max_size] contained in at least min_support rows.
std::vector<Itemset> mine_frequent_itemsets(std::span<const Report> reports,
                                            std::uint32_t min_support,
                                            std::uint32_t max_size);

struct DetectionResult {
  std::vector<NodeId> flagged;  // ascending
  double precision = 1.0;
  double recall = 0.0;
  std::vector<Report> cleaned;
};

/// Flags nodes whose claimed neighbor set contains more than
/// itemset_threshold mined frequent itemsets, then reconstructs their rows.
DetectionResult detect_by_itemsets(std::span<const Report> reports,
                                   const DetectorConfig& cfg);

/// Replaces each flagged row with what the unflagged nodes claim about it;
/// flagged-to-flagged bits are cleared.
std::vector<Report> reconstruct_after_itemset_detection(
    std::span<const Report> reports, std::span<const NodeId> flagged);

/// Flags nodes whose |reported degree - calibrated row-degree estimate|
/// exceeds max_i dhat_i + 3 sigma, sigma = sqrt(2) * (2 / eps2). Cleaning
/// removes a flagged node's claimed connections entirely. A positive
/// threshold_override replaces the computed threshold.
DetectionResult detect_by_degree_gap(std::span<const Report> reports,
                                     double keep_prob, double epsilon2,
                                     double threshold_override = 0.0);

enum class NaiveMode { kTop, kExtremes };

/// Flags ceil(fraction N) nodes with the highest calibrated degree estimates
/// (and the lowest too in extremes mode). Ties break by ascending node id.
DetectionResult naive_degree_detector(std::span<const Report> reports,
                                      double fraction, NaiveMode mode,
                                      double keep_prob);

/// (precision, recall); precision is 1 when nothing was flagged.
std::pair<double, double> evaluate_detection(std::span<const NodeId> flagged,
                                             std::span<const NodeId> true_fakes);

void score_detection(DetectionResult& result, std::span<const NodeId> true_fakes);

/// CSV: node, flagged, is_fake.
void write_detection_csv(std::ostream& out, const DetectionResult& result,
                         std::span<const NodeId> true_fakes, NodeId num_nodes);

}  // namespace ldpgraph
