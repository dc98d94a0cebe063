#include "ldpgraph/ldp.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace ldpgraph {

PrivacyParams split_budget(double epsilon, double alpha) {
  if (epsilon < 0.0) {
    throw std::domain_error("split_budget: epsilon must be nonnegative");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("split_budget: alpha must lie in (0, 1)");
  }
  PrivacyParams p;
  p.epsilon = epsilon;
  p.alpha = alpha;
  p.epsilon1 = alpha * epsilon;
  p.epsilon2 = (1.0 - alpha) * epsilon;
  p.keep_prob = perturbation_probability(p.epsilon1);
  p.laplace_scale = p.epsilon2 > 0.0 ? 2.0 / p.epsilon2
                                     : std::numeric_limits<double>::infinity();
  return p;
}

double perturbation_probability(double epsilon1) {
  if (epsilon1 < 0.0) {
    throw std::domain_error("perturbation_probability: epsilon1 must be nonnegative");
  }
  // Written as 1/(1+e^-eps1) so large budgets saturate to 1 without overflow.
  return 1.0 / (1.0 + std::exp(-epsilon1));
}

namespace {

void require_calibratable(double keep_prob) {
  if (!(keep_prob > 0.5) || keep_prob > 1.0) {
    throw std::domain_error("perturbation requires keep probability in (0.5, 1]");
  }
}

}  // namespace

std::vector<BitRow> perturb_adjacency(const Graph& g, double keep_prob,
                                      CollectionMode mode, Seed seed) {
  require_calibratable(keep_prob);
  const NodeId n = g.num_nodes();
  std::vector<BitRow> rows(n, BitRow(n));

  if (mode == CollectionMode::kSynchronizedPair) {
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        const bool bit = g.has_edge(i, j);
        const bool keep = uniform01(seed, Stream::kPairTrial, i, j) < keep_prob;
        const bool out = keep ? bit : !bit;
        if (out) {
          rows[i].set(j);
          rows[j].set(i);
        }
      }
    }
  } else {
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        const bool bit = g.has_edge(i, j);
        const bool keep = uniform01(seed, Stream::kDirectedTrial, i, j) < keep_prob;
        if (keep ? bit : !bit) rows[i].set(j);
      }
    }
  }
  return rows;
}

double perturb_degree(double true_degree, const PrivacyParams& params, Seed seed,
                      NodeId node) {
  if (!(params.epsilon2 > 0.0)) {
    throw std::domain_error("perturb_degree: epsilon2 must be positive");
  }
  const double u = uniform01(seed, Stream::kDegreeNoise, node);
  return true_degree + laplace_from_unit(u, 2.0 / params.epsilon2);
}

std::vector<Report> collect_reports(const Graph& g, const PrivacyParams& params,
                                    CollectionMode mode, Seed seed) {
  std::vector<BitRow> rows = perturb_adjacency(g, params.keep_prob, mode, seed);
  std::vector<Report> reports(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    reports[i].node = i;
    reports[i].bits = std::move(rows[i]);
    reports[i].degree = perturb_degree(g.degree(i), params, seed, i);
  }
  return reports;
}

namespace {

template <typename T>
void write_raw(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("report stream truncated");
  return v;
}

}  // namespace

void write_reports(std::ostream& out, std::span<const Report> reports) {
  write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(reports.size()));
  for (const Report& r : reports) {
    write_raw<std::uint32_t>(out, r.node);
    write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(r.bits.size()));
    for (std::uint64_t w : r.bits.words()) write_raw<std::uint64_t>(out, w);
    write_raw<double>(out, r.degree);
  }
}

std::vector<Report> read_reports(std::istream& in) {
  const auto count = read_raw<std::uint32_t>(in);
  std::vector<Report> reports(count);
  for (Report& r : reports) {
    r.node = read_raw<std::uint32_t>(in);
    const auto bits = read_raw<std::uint32_t>(in);
    r.bits = BitRow(bits);
    for (std::uint64_t& w : r.bits.words()) w = read_raw<std::uint64_t>(in);
    r.degree = read_raw<double>(in);
  }
  return reports;
}

void write_reports_csv(std::ostream& out, std::span<const Report> reports) {
  out << "node,degree,popcount,bits\n";
  for (const Report& r : reports) {
    out << r.node << ',' << r.degree << ',' << r.bits.popcount() << ',';
    bool first = true;
    r.bits.for_each_set([&](std::size_t j) {
      if (!first) out << ';';
      out << j;
      first = false;
    });
    out << '\n';
  }
}

}  // namespace ldpgraph
