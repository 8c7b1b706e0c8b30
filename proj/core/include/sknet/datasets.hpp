#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sknet/graph.hpp"

namespace sknet {

// Small graphs compiled into the library: "karate_club" (Zachary's karate
// club, 34 nodes, 78 undirected unweighted edges) and "bipartite_demo".
AnyGraph builtin(std::string_view name);
std::vector<std::string> builtin_names();
Graph karate_club();

// Environment variable overriding the default download cache.
inline constexpr const char* kDataDirEnv = "SKNET_DATA_DIR";

// $SKNET_DATA_DIR, else $HOME/.cache/sknet, else ./sknet_data.
std::filesystem::path default_data_dir();

struct KonectOptions {
  // "{name}" is replaced by the dataset name.
  std::string url_template = "http://konect.cc/files/download.tsv.{name}.tar.bz2";
  bool allow_network = true;
  int timeout_seconds = 60;
};

// Downloads (or reuses from cache_dir) the archive of a Konect dataset, parses
// its out.* member and caches the parsed graph in SKNB form. A warm cache
// performs no network I/O. Throws FetchError on HTTP failure without touching
// the cache, FormatError on malformed archives.
AnyGraph load_konect(std::string_view name, const std::filesystem::path& cache_dir,
                     const KonectOptions& opts = {});

// Decodes a Konect archive held in memory: bzip2, gzip or plain tar.
AnyGraph parse_konect_archive(std::string_view archive);

// Parses the text of a Konect out.* file. Header "% bip" yields a bipartite
// graph, "% asym" a directed one; ids are 1-based.
AnyGraph parse_konect_edges(std::string_view text);

}  // namespace sknet
