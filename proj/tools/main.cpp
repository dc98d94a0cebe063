// Command-line driver for the LDP graph-collection attack simulator.
//
//   ldpgraph fetch facebook
//   ldpgraph metrics --dataset er:200:0.05:7 --exact --out metrics.csv
//   ldpgraph attack --dataset facebook --metric degree --attack mga --out runs.csv
//   ldpgraph defend --dataset facebook --attack mga --defense itemsets --out runs.csv
//   ldpgraph sweep --dataset facebook --param beta --values 0.001,0.01,0.1 --out sweep.csv
//   ldpgraph plot --in sweep.csv --x beta --y gain_empirical --series attack --out sweep.svg

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldpgraph/harness.hpp"
#include "ldpgraph/plot.hpp"

namespace {

using namespace ldpgraph;

struct CommonOpts {
  ExperimentConfig cfg;
  std::string metric = "degree";
  std::string attack = "mga";
  std::string mode = "sync";
  std::string cache;
  bool compromised = false;
  bool genuine_baseline = false;

  void apply() {
    cfg.metric = metric_from_string(metric);
    cfg.attack = attack_from_string(attack);
    if (mode == "sync") {
      cfg.mode = CollectionMode::kSynchronizedPair;
    } else if (mode == "dual") {
      cfg.mode = CollectionMode::kDualReportOr;
    } else {
      throw CLI::ValidationError("--mode must be sync or dual");
    }
    cfg.fake_init = compromised ? FakeInit::kCompromised : FakeInit::kFresh;
    cfg.genuine_only_baseline = genuine_baseline;
    cfg.cache_dir = cache;
  }
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--dataset", o.cfg.dataset,
                  "Registry name (facebook, enron, astroph, gplus), synthetic "
                  "spec (er:n:p:seed, sbm:blocks:size:pin:pout:seed), or file path")
      ->required();
  cmd->add_option("--metric", o.metric, "degree or cc");
  cmd->add_option("--attack", o.attack, "rva, rna, or mga");
  cmd->add_option("--epsilon", o.cfg.epsilon, "Total privacy budget");
  cmd->add_option("--alpha", o.cfg.alpha, "Fraction of budget for adjacency bits");
  cmd->add_option("--beta", o.cfg.beta, "Fake-user fraction");
  cmd->add_option("--gamma", o.cfg.gamma, "Target fraction");
  cmd->add_option("--trials", o.cfg.trials, "Trials per configuration");
  cmd->add_option("--seed", o.cfg.seed, "Root seed");
  cmd->add_option("--mode", o.mode, "Collection mode: sync or dual");
  cmd->add_option("--threads", o.cfg.max_threads, "Worker threads (0 = auto)");
  cmd->add_option("--cache", o.cache, "Dataset cache dir (default $LDPGRAPH_CACHE)");
  cmd->add_flag("--compromised", o.compromised,
                "Fakes start with random pre-existing edges");
  cmd->add_flag("--genuine-baseline", o.genuine_baseline,
                "Measure gains against a genuine-users-only baseline");
  cmd->add_flag("--timings", o.cfg.measure_timings,
                "Record wall times (makes CSV nondeterministic)");
  cmd->add_flag("--large", o.cfg.allow_large,
                "Allow graphs above the streaming threshold");
}

void add_defense_options(CLI::App* cmd, std::string& defense, DetectorConfig& det) {
  cmd->add_option("--defense", defense,
                  "itemsets, degree_gap, naive_top, or naive_extremes");
  cmd->add_option("--min-support", det.min_support,
                  "Apriori minimum support (0 = ceil(0.01 N))");
  cmd->add_option("--max-itemset-size", det.max_itemset_size, "Apriori level cap");
  cmd->add_option("--itemset-threshold", det.itemset_threshold,
                  "Per-node frequent-itemset count threshold");
  cmd->add_option("--gap-threshold", det.degree_gap_threshold,
                  "Degree-gap threshold override (0 = max estimate + 3 sigma)");
  cmd->add_option("--naive-fraction", det.naive_fraction,
                  "Fraction flagged by the naive detectors");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

int cmd_fetch(const std::string& name, const std::string& cache) {
  const auto path = fetch_dataset(name, cache);
  const Graph g = load_dataset(name, cache);
  const GraphStats s = graph_stats(g);
  std::cout << path.string() << "\nnodes=" << g.num_nodes()
            << " edges=" << s.edge_count << " avg_degree=" << s.avg_degree
            << " density=" << s.edge_density << '\n';
  return 0;
}

int cmd_metrics(CommonOpts& o, const std::string& out_path, bool exact) {
  o.apply();
  const Graph g = load_dataset(o.cfg.dataset, o.cfg.cache_dir);
  auto out = open_out(out_path);
  if (exact) {
    out << "node_id,kind,value,raw_tau,calibrated_tau,d_tilde\n";
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      out << i << ",degree_centrality," << degree_centrality(g, i) << ",,,\n";
    }
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      out << i << ",clustering_coefficient," << local_clustering_coefficient(g, i)
          << ',' << triangle_count(g, i) << ",," << g.degree(i) << '\n';
    }
  } else {
    const PrivacyParams params = split_budget(o.cfg.epsilon, o.cfg.alpha);
    const auto reports = collect_reports(g, params, o.cfg.mode, Seed{o.cfg.seed});
    const PerturbedGraph pg = assemble_perturbed_graph(reports, o.cfg.mode);
    std::vector<MetricEstimate> degree;
    std::vector<ClusteringEstimate> cc;
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      degree.push_back(estimate_degree_centrality(pg, params.keep_prob, i));
      cc.push_back(estimate_clustering_coefficient(pg, reports, params.keep_prob, i));
    }
    write_estimates_csv(out, degree, cc);
  }
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

int run_and_write(const CommonOpts& o, const std::string& out_path) {
  std::vector<ResultRow> rows;
  const Graph g = load_dataset(o.cfg.dataset, o.cfg.cache_dir);
  for (std::uint32_t t = 0; t < o.cfg.trials; ++t) {
    rows.push_back(run_trial(o.cfg, g, t));
  }
  auto out = open_out(out_path);
  write_results(out, rows);
  double mean = 0.0;
  for (const ResultRow& r : rows) mean += r.gain_empirical;
  mean /= rows.empty() ? 1.0 : static_cast<double>(rows.size());
  std::cout << "wrote " << out_path << " (" << rows.size()
            << " rows, mean gain " << mean << ")\n";
  return 0;
}

int cmd_sweep(CommonOpts& o, const std::string& param_name,
              const std::string& values_csv, const std::string& out_path) {
  o.apply();
  SweepParam param;
  if (param_name == "epsilon") {
    param = SweepParam::kEpsilon;
  } else if (param_name == "beta") {
    param = SweepParam::kBeta;
  } else if (param_name == "gamma") {
    param = SweepParam::kGamma;
  } else if (param_name == "threshold") {
    param = SweepParam::kThreshold;
  } else {
    throw CLI::ValidationError("--param must be epsilon, beta, gamma, or threshold");
  }
  std::vector<double> values;
  std::stringstream ss(values_csv);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));

  const auto rows = run_sweep(o.cfg, param, values);
  auto out = open_out(out_path);
  write_results(out, rows);
  std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisoning attacks on LDP graph-metric collection"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file with key=value lines");
  app.allow_config_extras(CLI::config_extras_mode::ignore);

  std::string fetch_name, fetch_cache;
  auto* fetch = app.add_subcommand("fetch", "Download and verify a dataset");
  fetch->add_option("name", fetch_name, "Registry dataset name")->required();
  fetch->add_option("--cache", fetch_cache, "Cache dir (default $LDPGRAPH_CACHE)");

  CommonOpts metrics_opts;
  std::string metrics_out = "metrics.csv";
  bool metrics_exact = false;
  auto* metrics = app.add_subcommand("metrics", "Per-node metric values");
  add_common_options(metrics, metrics_opts);
  metrics->add_option("--out", metrics_out, "Output CSV path");
  metrics->add_flag("--exact", metrics_exact, "True metrics instead of estimates");

  CommonOpts attack_opts;
  std::string attack_out = "attack.csv";
  auto* attack = app.add_subcommand("attack", "Attack trials without defenses");
  add_common_options(attack, attack_opts);
  attack->add_option("--out", attack_out, "Output CSV path");

  CommonOpts defend_opts;
  std::string defend_out = "defend.csv";
  std::string defend_kind = "itemsets";
  DetectorConfig defend_det;
  auto* defend = app.add_subcommand("defend", "Attack trials with a countermeasure");
  add_common_options(defend, defend_opts);
  add_defense_options(defend, defend_kind, defend_det);
  defend->add_option("--out", defend_out, "Output CSV path");

  CommonOpts sweep_opts;
  std::string sweep_param = "epsilon", sweep_values, sweep_out = "sweep.csv";
  std::string sweep_defense;
  DetectorConfig sweep_det;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep");
  add_common_options(sweep, sweep_opts);
  add_defense_options(sweep, sweep_defense, sweep_det);
  sweep->add_option("--param", sweep_param, "epsilon, beta, gamma, or threshold")
      ->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep->add_option("--out", sweep_out, "Output CSV path");

  std::string plot_in, plot_x, plot_y, plot_series, plot_out = "plot.svg";
  auto* plot = app.add_subcommand("plot", "Render a results CSV as SVG");
  plot->add_option("--in", plot_in, "Input CSV")->required();
  plot->add_option("--x", plot_x, "X column")->required();
  plot->add_option("--y", plot_y, "Y column")->required();
  plot->add_option("--series", plot_series, "Series column")->required();
  plot->add_option("--out", plot_out, "Output SVG path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fetch->parsed()) return cmd_fetch(fetch_name, fetch_cache);
    if (metrics->parsed()) return cmd_metrics(metrics_opts, metrics_out, metrics_exact);
    if (attack->parsed()) {
      attack_opts.apply();
      return run_and_write(attack_opts, attack_out);
    }
    if (defend->parsed()) {
      defend_opts.apply();
      defend_opts.cfg.defense =
          DefenseConfig{defense_from_string(defend_kind), defend_det};
      return run_and_write(defend_opts, defend_out);
    }
    if (sweep->parsed()) {
      if (!sweep_defense.empty()) {
        sweep_opts.cfg.defense =
            DefenseConfig{defense_from_string(sweep_defense), sweep_det};
      }
      return cmd_sweep(sweep_opts, sweep_param, sweep_values, sweep_out);
    }
    if (plot->parsed()) {
      render_plot_file(plot_in, plot_x, plot_y, plot_series, plot_out);
      std::cout << "wrote " << plot_out << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
