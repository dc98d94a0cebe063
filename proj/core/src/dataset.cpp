#include "ldpgraph/dataset.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#ifdef LDPGRAPH_HAVE_HTTPS
#include <zlib.h>

#include "httplib.h"
#endif

namespace ldpgraph {

namespace {

const std::array<DatasetInfo, 4> kRegistry = {{
    {"facebook", "https://snap.stanford.edu/data/facebook_combined.txt.gz", 4039,
     88234},
    {"enron", "https://snap.stanford.edu/data/email-Enron.txt.gz", 36692, 183831},
    {"astroph", "https://snap.stanford.edu/data/ca-AstroPh.txt.gz", 18772, 198110},
    {"gplus", "https://snap.stanford.edu/data/gplus_combined.txt.gz", 107614,
     12238285},
}};

bool looks_gzipped(const std::string& body) {
  return body.size() >= 2 && static_cast<unsigned char>(body[0]) == 0x1f &&
         static_cast<unsigned char>(body[1]) == 0x8b;
}

#ifdef LDPGRAPH_HAVE_HTTPS
std::string gunzip(const std::string& body) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
    throw std::runtime_error("gunzip: inflateInit2 failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(body.data()));
  zs.avail_in = static_cast<uInt>(body.size());

  std::string out;
  std::vector<char> buf(1 << 20);
  int rc = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw std::runtime_error("gunzip: corrupt gzip stream");
    }
    out.append(buf.data(), buf.size() - zs.avail_out);
  } while (rc != Z_STREAM_END);
  inflateEnd(&zs);
  return out;
}

std::string http_get(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::runtime_error("fetch_dataset: malformed url " + url);
  }
  const auto host_start = scheme_end + 3;
  const auto path_start = url.find('/', host_start);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  client.set_follow_location(true);
  auto res = client.Get(path);
  if (!res) {
    throw std::runtime_error("fetch_dataset: network failure fetching " + url +
                             " (" + httplib::to_string(res.error()) + "); retryable");
  }
  if (res->status != 200) {
    throw std::runtime_error("fetch_dataset: HTTP " + std::to_string(res->status) +
                             " fetching " + url);
  }
  return res->body;
}
#endif

std::string download_with_retries(const std::string& url) {
#ifdef LDPGRAPH_HAVE_HTTPS
  std::string last_error;
  for (int attempt = 0; attempt < 3; ++attempt) {
    try {
      return http_get(url);
    } catch (const std::exception& e) {
      last_error = e.what();
      std::this_thread::sleep_for(std::chrono::seconds(1 + attempt));
    }
  }
  throw std::runtime_error(last_error);
#else
  throw std::runtime_error(
      "fetch_dataset: built without HTTPS support, cannot download " + url);
#endif
}

}  // namespace

std::span<const DatasetInfo> dataset_registry() { return kRegistry; }

std::optional<DatasetInfo> find_dataset(const std::string& name) {
  for (const DatasetInfo& d : kRegistry) {
    if (d.name == name) return d;
  }
  return std::nullopt;
}

std::filesystem::path resolve_cache_dir(const std::filesystem::path& requested) {
  if (!requested.empty()) return requested;
  if (const char* env = std::getenv("LDPGRAPH_CACHE"); env && *env) {
    return env;
  }
  return "ldpgraph-cache";
}

std::filesystem::path fetch_dataset(const std::string& name,
                                    const std::filesystem::path& cache_dir) {
  const auto info = find_dataset(name);
  if (!info) {
    throw std::invalid_argument("fetch_dataset: unknown dataset '" + name + "'");
  }
  const std::filesystem::path dir = resolve_cache_dir(cache_dir);
  const std::filesystem::path target = dir / (name + ".txt");
  if (std::filesystem::exists(target)) return target;

  std::string body = download_with_retries(info->url);
#ifdef LDPGRAPH_HAVE_HTTPS
  if (looks_gzipped(body)) body = gunzip(body);
#else
  if (looks_gzipped(body)) {
    throw std::runtime_error("fetch_dataset: gzip payload without zlib support");
  }
#endif

  std::filesystem::create_directories(dir);
  const std::filesystem::path tmp = target.string() + ".part";
  {
    std::ofstream out(tmp, std::ios::binary);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw std::runtime_error("fetch_dataset: write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
  return target;
}

Graph random_graph(NodeId num_nodes, double edge_prob, Seed seed) {
  GraphBuilder builder(num_nodes);
  for (NodeId i = 0; i < num_nodes; ++i) {
    for (NodeId j = i + 1; j < num_nodes; ++j) {
      if (uniform01(seed, Stream::kSyntheticGraph, i, j) < edge_prob) {
        builder.add_edge(i, j);
      }
    }
  }
  return std::move(builder).build();
}

Graph clustered_graph(NodeId blocks, NodeId block_size, double p_in, double p_out,
                      Seed seed) {
  const NodeId n = blocks * block_size;
  GraphBuilder builder(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const bool same_block = (i / block_size) == (j / block_size);
      const double p = same_block ? p_in : p_out;
      if (uniform01(seed, Stream::kSyntheticGraph, i, j) < p) {
        builder.add_edge(i, j);
      }
    }
  }
  return std::move(builder).build();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

Graph parse_synthetic(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts[0] == "er") {
    if (parts.size() != 4) {
      throw std::invalid_argument("synthetic spec must be er:<nodes>:<edge_prob>:<seed>");
    }
    return random_graph(static_cast<NodeId>(std::stoul(parts[1])),
                        std::stod(parts[2]), Seed{std::stoull(parts[3])});
  }
  if (parts[0] == "sbm") {
    if (parts.size() != 6) {
      throw std::invalid_argument(
          "synthetic spec must be sbm:<blocks>:<block_size>:<p_in>:<p_out>:<seed>");
    }
    return clustered_graph(static_cast<NodeId>(std::stoul(parts[1])),
                           static_cast<NodeId>(std::stoul(parts[2])),
                           std::stod(parts[3]), std::stod(parts[4]),
                           Seed{std::stoull(parts[5])});
  }
  throw std::invalid_argument("unknown synthetic graph family: " + parts[0]);
}

}  // namespace

Graph load_dataset(const std::string& name_or_path,
                   const std::filesystem::path& cache_dir) {
  if (name_or_path.rfind("er:", 0) == 0 || name_or_path.rfind("sbm:", 0) == 0) {
    return parse_synthetic(name_or_path);
  }
  if (const auto info = find_dataset(name_or_path)) {
    const auto path = fetch_dataset(name_or_path, cache_dir);
    Graph g = load_edge_list_file(path.string());
    if (g.num_nodes() != info->expected_nodes || g.edge_count() != info->expected_edges) {
      throw std::runtime_error(
          "load_dataset: integrity check failed for '" + name_or_path + "': got " +
          std::to_string(g.num_nodes()) + " nodes / " +
          std::to_string(g.edge_count()) + " edges, expected " +
          std::to_string(info->expected_nodes) + " / " +
          std::to_string(info->expected_edges));
    }
    return g;
  }
  return load_edge_list_file(name_or_path);
}

}  // namespace ldpgraph
