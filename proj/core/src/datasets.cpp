#include "sknet/datasets.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <utility>

#include <httplib.h>

#include "archive.hpp"
#include "sknet/error.hpp"
#include "sknet/io.hpp"

namespace sknet {

namespace {

// Zachary's karate club, 0-based, each undirected edge listed once.
constexpr std::pair<int, int> kKarateEdges[] = {
    {0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},   {0, 7},
    {0, 8},   {0, 10},  {0, 11},  {0, 12},  {0, 13},  {0, 17},  {0, 19},
    {0, 21},  {0, 31},  {1, 2},   {1, 3},   {1, 7},   {1, 13},  {1, 17},
    {1, 19},  {1, 21},  {1, 30},  {2, 3},   {2, 7},   {2, 8},   {2, 9},
    {2, 13},  {2, 27},  {2, 28},  {2, 32},  {3, 7},   {3, 12},  {3, 13},
    {4, 6},   {4, 10},  {5, 6},   {5, 10},  {5, 16},  {6, 16},  {8, 30},
    {8, 32},  {8, 33},  {9, 33},  {13, 33}, {14, 32}, {14, 33}, {15, 32},
    {15, 33}, {18, 32}, {18, 33}, {19, 33}, {20, 32}, {20, 33}, {22, 32},
    {22, 33}, {23, 25}, {23, 27}, {23, 29}, {23, 32}, {23, 33}, {24, 25},
    {24, 27}, {24, 31}, {25, 31}, {26, 29}, {26, 33}, {27, 33}, {28, 31},
    {28, 33}, {29, 32}, {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33},
    {32, 33},
};

BipartiteGraph bipartite_demo() {
  std::vector<std::string> rows = {"alice", "bob", "carol", "dave", "eve"};
  std::vector<std::string> cols = {"jazz", "rock", "folk"};
  const std::vector<Edge> edges = {
      {0, 0, 1.0}, {0, 1, 1.0}, {1, 1, 2.0}, {2, 0, 1.0},
      {2, 2, 1.0}, {3, 2, 3.0}, {4, 1, 1.0}, {4, 2, 1.0},
  };
  CsrMatrix biadjacency = CsrMatrix::from_edges(edges, rows.size(), cols.size());
  return BipartiteGraph(std::move(biadjacency), std::move(rows), std::move(cols));
}

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw FetchError("malformed URL: " + url);
  const std::size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string download(const std::string& url, int timeout_seconds) {
  const Url parts = split_url(url);
  httplib::Client client(parts.origin);
  client.set_follow_location(true);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  auto res = client.Get(parts.path);
  if (!res) {
    throw FetchError("request to " + url + " failed: " +
                     httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw FetchError("request to " + url + " returned HTTP " +
                     std::to_string(res->status));
  }
  return std::move(res->body);
}

}  // namespace

Graph karate_club() {
  std::vector<Edge> edges;
  for (auto [u, v] : kKarateEdges) {
    edges.push_back({static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v), 1.0});
  }
  return Graph::from_edges(edges, 34, false);
}

AnyGraph builtin(std::string_view name) {
  if (name == "karate_club") return karate_club();
  if (name == "bipartite_demo") return bipartite_demo();
  throw LookupError("unknown builtin graph '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"karate_club", "bipartite_demo"}; }

std::filesystem::path default_data_dir() {
  if (const char* dir = std::getenv(kDataDirEnv); dir && *dir) return dir;
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "sknet";
  }
  return "sknet_data";
}

AnyGraph parse_konect_edges(std::string_view text) {
  ParseOptions opts;
  opts.comment_prefixes = "%#";
  opts.delimiters = " \t";
  opts.index_base = 1;
  opts.allow_extra_columns = true;

  // Header: "% <sym|asym|bip> <weight kind>" then optionally "% m n1 n2".
  std::istringstream header{std::string(text.substr(0, 4096))};
  std::string line;
  int header_line = 0;
  while (std::getline(header, line) && header_line < 2 && line.starts_with("%")) {
    std::istringstream tokens(line.substr(1));
    std::vector<std::string> words{std::istream_iterator<std::string>(tokens), {}};
    if (header_line == 0) {
      if (!words.empty()) {
        opts.bipartite = words[0] == "bip";
        opts.directed = words[0] == "asym";
      }
      if (words.size() >= 2 && words[1] == "unweighted") opts.weighted = Weighted::kNo;
    } else if (words.size() >= 2) {
      auto count = [&](std::size_t k) -> std::size_t {
        return k < words.size() ? std::strtoull(words[k].c_str(), nullptr, 10) : 0;
      };
      opts.min_rows = count(1);
      opts.min_cols = opts.bipartite ? count(2) : count(1);
    }
    ++header_line;
  }
  return parse_edge_list(text, opts);
}

AnyGraph parse_konect_archive(std::string_view archive) {
  const std::string tar = detail::decompress(archive);
  for (const auto& member : detail::read_tar(tar)) {
    const std::string base = std::filesystem::path(member.name).filename().string();
    if (base.starts_with("out.")) return parse_konect_edges(member.data);
  }
  throw FormatError("archive has no out.* member");
}

AnyGraph load_konect(std::string_view name, const std::filesystem::path& cache_dir,
                     const KonectOptions& opts) {
  if (name.empty() || name.find('/') != std::string_view::npos) {
    throw ParameterError("invalid dataset name '" + std::string(name) + "'");
  }
  const std::filesystem::path parsed = cache_dir / (std::string(name) + ".sknb");
  const std::filesystem::path archive = cache_dir / (std::string(name) + ".archive");

  if (std::filesystem::exists(parsed)) return load_binary(parsed);

  const bool cached = std::filesystem::exists(archive);
  std::string bytes;
  if (cached) {
    bytes = read_file(archive);
  } else {
    if (!opts.allow_network) {
      throw FetchError("dataset '" + std::string(name) +
                       "' is not cached and network access is disabled");
    }
    std::string url = opts.url_template;
    if (auto pos = url.find("{name}"); pos != std::string::npos) {
      url.replace(pos, 6, name);
    }
    bytes = download(url, opts.timeout_seconds);
  }
  // Only archives that parse are cached.
  AnyGraph g = parse_konect_archive(bytes);
  std::filesystem::create_directories(cache_dir);
  if (!cached) {
    write_file_atomically(archive, [&](std::ostream& out) {
      out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    });
  }
  save_binary(g, parsed);
  return g;
}

}  // namespace sknet
