#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ldpgraph/dataset.hpp"
#include "ldpgraph/defenses.hpp"
#include "ldpgraph/gain.hpp"

namespace ldpgraph {

enum class DefenseKind { kItemsets, kDegreeGap, kNaiveTop, kNaiveExtremes };

struct DefenseConfig {
  DefenseKind kind = DefenseKind::kItemsets;
  DetectorConfig detector;
};

/// One experiment cell. Defaults follow the evaluation setup: beta = gamma =
/// 0.05, epsilon = 4, ten trials.
struct ExperimentConfig {
  std::string dataset;
  MetricKind metric = MetricKind::kDegreeCentrality;
  AttackKind attack = AttackKind::kMga;
  double epsilon = 4.0;
  double alpha = 0.5;
  double beta = 0.05;
  double gamma = 0.05;
  std::uint32_t trials = 10;
  std::uint64_t seed = 1;
  CollectionMode mode = CollectionMode::kSynchronizedPair;
  FakeInit fake_init = FakeInit::kFresh;
  bool genuine_only_baseline = false;
  std::optional<DefenseConfig> defense;
  std::filesystem::path cache_dir;
  // Real wall times make CSV bytes nondeterministic, so they are opt-in;
  // the column reads 0 otherwise.
  bool measure_timings = false;
  // Graphs above the streaming threshold are refused unless enabled; the
  // degree metric then runs through a row-streaming path that never
  // materializes the perturbed matrices.
  bool allow_large = false;
  std::uint32_t max_threads = 0;  // 0: hardware concurrency
};

struct ResultRow {
  std::string dataset;
  std::string metric;
  std::string attack;
  double epsilon = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::uint32_t trial = 0;
  double gain_empirical = 0.0;
  std::optional<double> gain_theoretical;
  std::string defense;  // empty when no defense ran
  std::optional<double> post_defense_gain;
  std::optional<double> precision;
  std::optional<double> recall;
  std::uint64_t wall_time_ms = 0;
};

ResultRow run_trial(const ExperimentConfig& cfg, std::uint32_t trial_index);
ResultRow run_trial(const ExperimentConfig& cfg, const Graph& g,
                    std::uint32_t trial_index);

enum class SweepParam { kEpsilon, kBeta, kGamma, kThreshold };

/// Cartesian product of values x trials with everything else fixed; rows are
/// ordered by (value index, trial index) regardless of how workers finish.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, SweepParam param,
                                 std::span<const double> values);

void write_results(std::ostream& out, std::span<const ResultRow> rows);
std::vector<ResultRow> read_results(std::istream& in);

std::string to_string(MetricKind metric);
std::string to_string(AttackKind attack);
std::string to_string(DefenseKind defense);
MetricKind metric_from_string(const std::string& s);
AttackKind attack_from_string(const std::string& s);
DefenseKind defense_from_string(const std::string& s);

}  // namespace ldpgraph
