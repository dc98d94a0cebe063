#include "ldpgraph/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ldpgraph {

namespace {

// Graphs above this stay on the O(N)-memory streaming path.
constexpr NodeId kStreamingThreshold = 50000;

struct TrialSeeds {
  Seed threat;
  Seed collect;
  Seed craft;
  Seed fake_init;
};

TrialSeeds derive_seeds(std::uint64_t root, std::uint32_t trial_index) {
  const Seed trial{stream_hash(Seed{root}, Stream::kTrialDerive, trial_index)};
  return TrialSeeds{
      Seed{stream_hash(trial, Stream::kTrialDerive, 1)},
      Seed{stream_hash(trial, Stream::kTrialDerive, 2)},
      Seed{stream_hash(trial, Stream::kTrialDerive, 3)},
      Seed{stream_hash(trial, Stream::kTrialDerive, 4)},
  };
}

DetectionResult run_detector(const DefenseConfig& dc,
                             std::span<const Report> attack_reports,
                             const PrivacyParams& params) {
  switch (dc.kind) {
    case DefenseKind::kItemsets:
      return detect_by_itemsets(attack_reports, dc.detector);
    case DefenseKind::kDegreeGap:
      return detect_by_degree_gap(attack_reports, params.keep_prob, params.epsilon2,
                                  dc.detector.degree_gap_threshold);
    case DefenseKind::kNaiveTop:
      return naive_degree_detector(attack_reports, dc.detector.naive_fraction,
                                   NaiveMode::kTop, params.keep_prob);
    case DefenseKind::kNaiveExtremes:
      return naive_degree_detector(attack_reports, dc.detector.naive_fraction,
                                   NaiveMode::kExtremes, params.keep_prob);
  }
  throw std::logic_error("run_detector: unknown defense kind");
}

std::optional<double> theoretical_gain(const ExperimentConfig& cfg,
                                       const ThreatModel& tm,
                                       const AttackerKnowledge& knowledge) {
  if (cfg.attack != AttackKind::kMga) return std::nullopt;
  try {
    if (cfg.metric == MetricKind::kDegreeCentrality) {
      return theoretical_gain_degree(tm.fake_count, tm.target_count, tm.total_nodes,
                                     knowledge.avg_perturbed_degree);
    }
    return theoretical_gain_cc(tm.fake_count, tm.target_count, tm.total_nodes,
                               knowledge.params.keep_prob,
                               knowledge.avg_perturbed_degree);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

ResultRow make_row(const ExperimentConfig& cfg, std::uint32_t trial_index) {
  ResultRow row;
  row.dataset = cfg.dataset;
  row.metric = to_string(cfg.metric);
  row.attack = to_string(cfg.attack);
  row.epsilon = cfg.epsilon;
  row.beta = cfg.beta;
  row.gamma = cfg.gamma;
  row.trial = trial_index;
  return row;
}

ResultRow run_trial_streaming(const ExperimentConfig& cfg, const Graph& g,
                              std::uint32_t trial_index) {
  if (cfg.metric != MetricKind::kDegreeCentrality) {
    throw std::invalid_argument(
        "graphs above the streaming threshold support the degree metric only");
  }
  if (cfg.fake_init != FakeInit::kFresh || cfg.defense || cfg.genuine_only_baseline) {
    throw std::invalid_argument(
        "streaming path supports fresh fakes without defenses only");
  }
  const TrialSeeds seeds = derive_seeds(cfg.seed, trial_index);
  const PrivacyParams params = split_budget(cfg.epsilon, cfg.alpha);
  ThreatModel tm = plan_threat(g.num_nodes(), cfg.beta, cfg.gamma, seeds.threat,
                               cfg.fake_init);

  ResultRow row = make_row(cfg, trial_index);
  AttackerKnowledge knowledge;
  knowledge.avg_perturbed_degree =
      streaming_avg_perturbed_degree(g, tm, params, seeds.collect, cfg.mode);
  knowledge.params = params;
  knowledge.total_nodes = tm.total_nodes;

  const AttackPlan plan =
      craft_attack(cfg.attack, cfg.metric, tm, knowledge, seeds.craft);
  row.gain_empirical =
      empirical_gain_streaming_degree(g, tm, plan, params, seeds.collect, cfg.mode)
          .total;
  row.gain_theoretical = theoretical_gain(cfg, tm, knowledge);
  return row;
}

}  // namespace

ResultRow run_trial(const ExperimentConfig& cfg, const Graph& g,
                    std::uint32_t trial_index) {
  const auto started = std::chrono::steady_clock::now();

  if (g.num_nodes() > kStreamingThreshold && !cfg.allow_large) {
    throw std::invalid_argument(
        "dataset has " + std::to_string(g.num_nodes()) +
        " nodes; pass --large to run it through the streaming path");
  }
  ResultRow row;
  if (g.num_nodes() > kStreamingThreshold) {
    row = run_trial_streaming(cfg, g, trial_index);
  } else {
    const TrialSeeds seeds = derive_seeds(cfg.seed, trial_index);
    const PrivacyParams params = split_budget(cfg.epsilon, cfg.alpha);
    ThreatModel tm = plan_threat(g.num_nodes(), cfg.beta, cfg.gamma, seeds.threat,
                                 cfg.fake_init);
    row = make_row(cfg, trial_index);

    // The attacker's degree knowledge comes from a fresh-extended collection;
    // in fresh mode this is exactly the baseline the gain is measured against.
    const Graph g_fresh = extend_with_isolated_nodes(g, tm.fake_count);
    AttackerKnowledge knowledge;
    {
      const std::vector<Report> probe =
          collect_reports(g_fresh, params, cfg.mode, seeds.collect);
      knowledge.avg_perturbed_degree =
          assemble_perturbed_graph(probe, cfg.mode).avg_row_degree();
    }
    knowledge.params = params;
    knowledge.total_nodes = tm.total_nodes;

    if (cfg.fake_init == FakeInit::kCompromised) {
      seed_compromised_fakes(tm, knowledge, seeds.fake_init);
    }
    const AttackPlan plan =
        craft_attack(cfg.attack, cfg.metric, tm, knowledge, seeds.craft);
    const Graph g_base = cfg.fake_init == FakeInit::kCompromised
                             ? attack_base_graph(g, tm)
                             : g_fresh;

    GainOptions options;
    options.mode = cfg.mode;
    options.genuine_only_baseline = cfg.genuine_only_baseline;
    if (cfg.genuine_only_baseline && cfg.defense) {
      throw std::invalid_argument(
          "defenses require the standard all-identities baseline");
    }
    if (cfg.genuine_only_baseline) {
      row.gain_empirical =
          empirical_gain(g_base, tm, plan, params, seeds.collect, options).total;
    } else {
      const AttackRun run =
          run_attack_collection(g_base, tm, plan, params, seeds.collect, options);
      const GainReport gain = gain_from_run(run, tm, plan, params.keep_prob);
      row.gain_empirical = gain.total;

      if (cfg.defense) {
        DetectionResult det = run_detector(*cfg.defense, run.attack_reports, params);
        std::vector<NodeId> fakes;
        for (NodeId u = tm.first_fake(); u < tm.total_nodes; ++u) fakes.push_back(u);
        score_detection(det, fakes);
        row.precision = det.precision;
        row.recall = det.recall;

        const PerturbedGraph post_pg =
            assemble_perturbed_graph(det.cleaned, cfg.mode);
        double post = 0.0;
        for (std::size_t k = 0; k < tm.targets.size(); ++k) {
          const double defended =
              estimate_target_metric(post_pg, det.cleaned, cfg.metric,
                                     params.keep_prob, tm.targets[k]);
          post += std::abs(defended - gain.targets[k].before);
        }
        row.post_defense_gain = post;
        row.defense = to_string(cfg.defense->kind);
      }
    }
    row.gain_theoretical = theoretical_gain(cfg, tm, knowledge);
  }

  if (cfg.measure_timings) {
    row.wall_time_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started)
            .count());
  }
  return row;
}

ResultRow run_trial(const ExperimentConfig& cfg, std::uint32_t trial_index) {
  const Graph g = load_dataset(cfg.dataset, cfg.cache_dir);
  return run_trial(cfg, g, trial_index);
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, SweepParam param,
                                 std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("run_sweep: values must be non-empty");
  }
  const Graph g = load_dataset(cfg.dataset, cfg.cache_dir);

  std::vector<ExperimentConfig> cells;
  cells.reserve(values.size());
  for (double v : values) {
    ExperimentConfig cell = cfg;
    switch (param) {
      case SweepParam::kEpsilon: cell.epsilon = v; break;
      case SweepParam::kBeta: cell.beta = v; break;
      case SweepParam::kGamma: cell.gamma = v; break;
      case SweepParam::kThreshold:
        if (!cell.defense) {
          throw std::invalid_argument("threshold sweep requires a defense");
        }
        cell.defense->detector.itemset_threshold = v;
        break;
    }
    cells.push_back(std::move(cell));
  }

  const std::size_t jobs = cells.size() * cfg.trials;
  std::vector<ResultRow> rows(jobs);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  const std::size_t workers = std::min<std::size_t>(
      jobs, cfg.max_threads > 0 ? cfg.max_threads
                                : std::max(1u, std::thread::hardware_concurrency()));
  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs || failed.load()) return;
      const std::size_t cell = k / cfg.trials;
      const auto trial = static_cast<std::uint32_t>(k % cfg.trials);
      try {
        rows[k] = run_trial(cells[cell], g, trial);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("run_sweep: " + first_error);
  return rows;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

}  // namespace

void write_results(std::ostream& out, std::span<const ResultRow> rows) {
  out << "dataset,metric,attack,epsilon,beta,gamma,trial,gain_empirical,"
         "gain_theoretical,defense,post_defense_gain,precision,recall,"
         "wall_time_ms\n";
  for (const ResultRow& r : rows) {
    out << r.dataset << ',' << r.metric << ',' << r.attack << ','
        << format_double(r.epsilon) << ',' << format_double(r.beta) << ','
        << format_double(r.gamma) << ',' << r.trial << ','
        << format_double(r.gain_empirical) << ','
        << format_optional(r.gain_theoretical) << ',' << r.defense << ','
        << format_optional(r.post_defense_gain) << ','
        << format_optional(r.precision) << ',' << format_optional(r.recall) << ','
        << r.wall_time_ms << '\n';
  }
}

std::vector<ResultRow> read_results(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("read_results: missing header");
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 14) {
      throw std::runtime_error("read_results: malformed row: " + line);
    }
    ResultRow r;
    r.dataset = f[0];
    r.metric = f[1];
    r.attack = f[2];
    r.epsilon = std::stod(f[3]);
    r.beta = std::stod(f[4]);
    r.gamma = std::stod(f[5]);
    r.trial = static_cast<std::uint32_t>(std::stoul(f[6]));
    r.gain_empirical = std::stod(f[7]);
    r.gain_theoretical = parse_optional(f[8]);
    r.defense = f[9];
    r.post_defense_gain = parse_optional(f[10]);
    r.precision = parse_optional(f[11]);
    r.recall = parse_optional(f[12]);
    r.wall_time_ms = std::stoull(f[13]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_string(MetricKind metric) {
  return metric == MetricKind::kDegreeCentrality ? "degree" : "cc";
}

std::string to_string(AttackKind attack) {
  switch (attack) {
    case AttackKind::kRva: return "rva";
    case AttackKind::kRna: return "rna";
    case AttackKind::kMga: return "mga";
  }
  return "?";
}

std::string to_string(DefenseKind defense) {
  switch (defense) {
    case DefenseKind::kItemsets: return "itemsets";
    case DefenseKind::kDegreeGap: return "degree_gap";
    case DefenseKind::kNaiveTop: return "naive_top";
    case DefenseKind::kNaiveExtremes: return "naive_extremes";
  }
  return "?";
}

MetricKind metric_from_string(const std::string& s) {
  if (s == "degree") return MetricKind::kDegreeCentrality;
  if (s == "cc") return MetricKind::kClusteringCoefficient;
  throw std::invalid_argument("unknown metric: " + s);
}

AttackKind attack_from_string(const std::string& s) {
  if (s == "rva") return AttackKind::kRva;
  if (s == "rna") return AttackKind::kRna;
  if (s == "mga") return AttackKind::kMga;
  throw std::invalid_argument("unknown attack: " + s);
}

DefenseKind defense_from_string(const std::string& s) {
  if (s == "itemsets") return DefenseKind::kItemsets;
  if (s == "degree_gap") return DefenseKind::kDegreeGap;
  if (s == "naive_top") return DefenseKind::kNaiveTop;
  if (s == "naive_extremes") return DefenseKind::kNaiveExtremes;
  throw std::invalid_argument("unknown defense: " + s);
}

}  // namespace ldpgraph
