#include "ldpgraph/defenses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ldpgraph {

namespace {

// Rows-as-bitset columns for the items that survived level 1; support of an
// itemset is the popcount of the AND of its columns.
struct ColumnIndex {
  std::vector<NodeId> items;           // frequent single items, ascending
  std::vector<std::uint32_t> position; // item id -> index into columns
  std::vector<BitRow> columns;         // one row-set per frequent item

  BitRow rows_containing(std::span<const NodeId> itemset) const {
    BitRow acc = columns[position[itemset[0]]];
    for (std::size_t k = 1; k < itemset.size(); ++k) {
      const BitRow& col = columns[position[itemset[k]]];
      auto aw = acc.words();
      auto cw = col.words();
      for (std::size_t w = 0; w < aw.size(); ++w) aw[w] &= cw[w];
    }
    return acc;
  }
};

ColumnIndex build_column_index(std::span<const Report> reports,
                               std::uint32_t min_support) {
  const std::size_t num_rows = reports.size();
  const std::size_t num_items = num_rows == 0 ? 0 : reports[0].bits.size();
  std::vector<std::uint32_t> item_support(num_items, 0);
  for (const Report& r : reports) {
    r.bits.for_each_set([&](std::size_t j) { ++item_support[j]; });
  }

  ColumnIndex idx;
  idx.position.assign(num_items, 0);
  for (std::size_t j = 0; j < num_items; ++j) {
    if (item_support[j] >= min_support) {
      idx.position[j] = static_cast<std::uint32_t>(idx.items.size());
      idx.items.push_back(static_cast<NodeId>(j));
    }
  }
  idx.columns.assign(idx.items.size(), BitRow(num_rows));
  for (std::size_t row = 0; row < num_rows; ++row) {
    reports[row].bits.for_each_set([&](std::size_t j) {
      if (item_support[j] >= min_support) {
        idx.columns[idx.position[j]].set(row);
      }
    });
  }
  return idx;
}

std::vector<Itemset> mine_with_index(const ColumnIndex& idx,
                                     std::uint32_t min_support,
                                     std::uint32_t max_size) {
  std::vector<Itemset> result;
  if (idx.items.size() < 2 || max_size < 2) return result;

  // Level 2: all pairs of frequent items.
  std::vector<Itemset> level;
  for (std::size_t a = 0; a < idx.items.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.items.size(); ++b) {
      const auto support = static_cast<std::uint32_t>(
          idx.columns[a].and_popcount(idx.columns[b]));
      if (support >= min_support) {
        level.push_back(Itemset{{idx.items[a], idx.items[b]}, support});
      }
    }
  }

  for (std::uint32_t size = 3; !level.empty(); ++size) {
    result.insert(result.end(), level.begin(), level.end());
    if (size > max_size) break;

    // Join step: extend pairs of frequent (size-1)-itemsets sharing their
    // first size-2 items; candidates are generated in lexicographic order.
    std::vector<Itemset> next;
    for (std::size_t a = 0; a < level.size(); ++a) {
      for (std::size_t b = a + 1; b < level.size(); ++b) {
        const auto& ia = level[a].items;
        const auto& ib = level[b].items;
        if (!std::equal(ia.begin(), ia.end() - 1, ib.begin(), ib.end() - 1)) {
          // Sorted order means later itemsets cannot share the prefix either.
          break;
        }
        std::vector<NodeId> candidate = ia;
        candidate.push_back(ib.back());

        // Prune: every (size-1)-subset must be frequent.
        bool all_frequent = true;
        for (std::size_t drop = 0; drop + 2 < candidate.size() && all_frequent;
             ++drop) {
          std::vector<NodeId> sub;
          sub.reserve(candidate.size() - 1);
          for (std::size_t i = 0; i < candidate.size(); ++i) {
            if (i != drop) sub.push_back(candidate[i]);
          }
          all_frequent = std::binary_search(
              level.begin(), level.end(), Itemset{sub, 0},
              [](const Itemset& x, const Itemset& y) { return x.items < y.items; });
        }
        if (!all_frequent) continue;

        const auto support = static_cast<std::uint32_t>(
            idx.rows_containing(candidate).popcount());
        if (support >= min_support) {
          next.push_back(Itemset{std::move(candidate), support});
        }
      }
    }
    level = std::move(next);
  }
  return result;
}

std::uint32_t effective_min_support(std::span<const Report> reports,
                                    const DetectorConfig& cfg) {
  if (cfg.min_support > 0) return cfg.min_support;
  return static_cast<std::uint32_t>(
      std::ceil(0.01 * static_cast<double>(reports.size())));
}

double row_degree_estimate(const Report& r, double keep_prob) {
  const double n = static_cast<double>(r.bits.size());
  return (static_cast<double>(r.bits.popcount()) - (n - 1.0) * (1.0 - keep_prob)) /
         (2.0 * keep_prob - 1.0);
}

/// Zero the flagged rows and clear every claim pointing at a flagged node.
std::vector<Report> remove_flagged_connections(std::span<const Report> reports,
                                               std::span<const NodeId> flagged) {
  std::vector<Report> cleaned(reports.begin(), reports.end());
  BitRow is_flagged(reports.size());
  for (NodeId u : flagged) is_flagged.set(u);
  for (Report& r : cleaned) {
    if (is_flagged.get(r.node)) {
      r.bits.clear_all();
    } else {
      for (NodeId u : flagged) r.bits.clear(u);
    }
  }
  return cleaned;
}

}  // namespace

std::vector<Itemset> mine_frequent_itemsets(std::span<const Report> reports,
                                            std::uint32_t min_support,
                                            std::uint32_t max_size) {
  if (min_support == 0) {
    throw std::invalid_argument("mine_frequent_itemsets: min_support must be >= 1");
  }
  if (reports.empty() || max_size < 2) return {};
  const ColumnIndex idx = build_column_index(reports, min_support);
  return mine_with_index(idx, min_support, max_size);
}

DetectionResult detect_by_itemsets(std::span<const Report> reports,
                                   const DetectorConfig& cfg) {
  const std::uint32_t min_support = effective_min_support(reports, cfg);
  const ColumnIndex idx = build_column_index(reports, min_support);
  const std::vector<Itemset> frequent =
      mine_with_index(idx, min_support, cfg.max_itemset_size);

  // A node's score is the number of frequent itemsets inside its claimed
  // neighbor set, i.e. the number of itemsets whose row set contains it.
  std::vector<std::uint64_t> score(reports.size(), 0);
  for (const Itemset& is : frequent) {
    idx.rows_containing(is.items).for_each_set([&](std::size_t row) { ++score[row]; });
  }

  DetectionResult result;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (static_cast<double>(score[i]) > cfg.itemset_threshold) {
      result.flagged.push_back(static_cast<NodeId>(i));
    }
  }
  result.cleaned = reconstruct_after_itemset_detection(reports, result.flagged);
  return result;
}

std::vector<Report> reconstruct_after_itemset_detection(
    std::span<const Report> reports, std::span<const NodeId> flagged) {
  std::vector<Report> cleaned(reports.begin(), reports.end());
  if (flagged.empty()) return cleaned;
  BitRow is_flagged(reports.size());
  for (NodeId u : flagged) is_flagged.set(u);

  for (NodeId u : flagged) {
    BitRow rebuilt(reports[u].bits.size());
    for (std::size_t j = 0; j < reports.size(); ++j) {
      if (!is_flagged.get(j) && reports[j].bits.get(u)) {
        rebuilt.set(j);
      }
    }
    cleaned[u].bits = std::move(rebuilt);
  }
  return cleaned;
}

DetectionResult detect_by_degree_gap(std::span<const Report> reports,
                                     double keep_prob, double epsilon2,
                                     double threshold_override) {
  if (!(keep_prob > 0.5)) {
    throw std::domain_error("detect_by_degree_gap: requires p > 0.5");
  }
  if (!(epsilon2 > 0.0)) {
    throw std::domain_error("detect_by_degree_gap: requires epsilon2 > 0");
  }
  double max_estimate = 0.0;
  std::vector<double> estimate(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    estimate[i] = row_degree_estimate(reports[i], keep_prob);
    max_estimate = std::max(max_estimate, estimate[i]);
  }
  const double sigma = std::sqrt(2.0) * (2.0 / epsilon2);
  const double threshold =
      threshold_override > 0.0 ? threshold_override : max_estimate + 3.0 * sigma;

  DetectionResult result;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (std::abs(reports[i].degree - estimate[i]) > threshold) {
      result.flagged.push_back(static_cast<NodeId>(i));
    }
  }
  result.cleaned = remove_flagged_connections(reports, result.flagged);
  return result;
}

DetectionResult naive_degree_detector(std::span<const Report> reports,
                                      double fraction, NaiveMode mode,
                                      double keep_prob) {
  if (!(fraction > 0.0 && fraction < 0.5)) {
    throw std::domain_error("naive_degree_detector: fraction must lie in (0, 0.5)");
  }
  const std::size_t n = reports.size();
  const auto k = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(n)));

  std::vector<double> estimate(n);
  for (std::size_t i = 0; i < n; ++i) {
    estimate[i] = row_degree_estimate(reports[i], keep_prob);
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (estimate[a] != estimate[b]) return estimate[a] > estimate[b];
    return a < b;
  });

  BitRow mark(n);
  for (std::size_t i = 0; i < std::min(k, n); ++i) mark.set(order[i]);
  if (mode == NaiveMode::kExtremes) {
    for (std::size_t i = 0; i < std::min(k, n); ++i) mark.set(order[n - 1 - i]);
  }

  DetectionResult result;
  result.flagged = mark.set_bits();
  result.cleaned = remove_flagged_connections(reports, result.flagged);
  return result;
}

std::pair<double, double> evaluate_detection(std::span<const NodeId> flagged,
                                             std::span<const NodeId> true_fakes) {
  std::vector<NodeId> f(flagged.begin(), flagged.end());
  std::vector<NodeId> t(true_fakes.begin(), true_fakes.end());
  std::sort(f.begin(), f.end());
  std::sort(t.begin(), t.end());
  std::vector<NodeId> common;
  std::set_intersection(f.begin(), f.end(), t.begin(), t.end(),
                        std::back_inserter(common));
  const double precision =
      f.empty() ? 1.0 : static_cast<double>(common.size()) / f.size();
  const double recall =
      t.empty() ? 1.0 : static_cast<double>(common.size()) / t.size();
  return {precision, recall};
}

void score_detection(DetectionResult& result, std::span<const NodeId> true_fakes) {
  const auto [precision, recall] = evaluate_detection(result.flagged, true_fakes);
  result.precision = precision;
  result.recall = recall;
}

void write_detection_csv(std::ostream& out, const DetectionResult& result,
                         std::span<const NodeId> true_fakes, NodeId num_nodes) {
  BitRow flagged(num_nodes), fake(num_nodes);
  for (NodeId u : result.flagged) flagged.set(u);
  for (NodeId u : true_fakes) fake.set(u);
  out << "node,flagged,is_fake\n";
  for (NodeId i = 0; i < num_nodes; ++i) {
    out << i << ',' << (flagged.get(i) ? 1 : 0) << ',' << (fake.get(i) ? 1 : 0)
        << '\n';
  }
}

}  // namespace ldpgraph
