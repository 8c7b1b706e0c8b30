#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "sknet/graph.hpp"

namespace sknet {

enum class Weighted {
  kAuto,  // weighted iff the first data line has a third column
  kYes,
  kNo,
};

// Edge-list parsing options. Each data line is `src<sep>dst[<sep>weight]`.
//
// Node labels: when every label on a side is a decimal integer and the set of
// labels is exactly 0..n-1, labels are used as ids. Otherwise nodes are
// numbered by first appearance and the labels are kept as names.
struct ParseOptions {
  std::string comment_prefixes = "#%";
  std::string delimiters = "\t ,";
  Weighted weighted = Weighted::kAuto;
  bool bipartite = false;
  bool directed = false;
  // Labels are integer ids offset by this base (Konect files use 1). Gaps
  // become isolated nodes.
  std::optional<std::uint64_t> index_base;
  // Minimum node counts, used with index_base to keep trailing isolated nodes.
  std::size_t min_rows = 0;
  std::size_t min_cols = 0;
  // Ignore columns after the third instead of failing.
  bool allow_extra_columns = false;
};

AnyGraph parse_edge_list(std::istream& in, const ParseOptions& opts = {});
AnyGraph parse_edge_list(std::string_view text, const ParseOptions& opts = {});
AnyGraph read_edge_list(const std::filesystem::path& path,
                        const ParseOptions& opts = {});

// Writes `src\tdst\tweight` lines using names when present. Undirected graphs
// list each pair once (i <= j) with self-loop weights halved, so parsing the
// output with the same orientation reproduces the adjacency.
void write_edge_list(const AnyGraph& g, std::ostream& out);

// SKNB binary layout (little-endian):
//   "SKNB" | u8 version (1) | u8 flags
//   flags: bit0 directed, bit1 bipartite, bit2 64-bit indices, bit3 names
//   u64 n_rows | u64 n_cols | u64 nnz
//   u64 indptr[n_rows + 1] | u32/u64 indices[nnz] | f64 data[nnz]
//   names (bit3): one table per node set (graph: 1, bipartite: rows then
//   cols), each `u64 count` followed by count x (`u32 byte length` + UTF-8).
inline constexpr char kBinaryMagic[4] = {'S', 'K', 'N', 'B'};
inline constexpr std::uint8_t kBinaryVersion = 1;

void write_binary(const AnyGraph& g, std::ostream& out);
// Throws FormatError naming the byte offset of the first problem.
AnyGraph read_binary(std::istream& in);
void save_binary(const AnyGraph& g, const std::filesystem::path& path);
AnyGraph load_binary(const std::filesystem::path& path);

// True when the file starts with the SKNB magic.
bool is_binary_file(const std::filesystem::path& path);
// Binary when the magic matches, otherwise an edge list parsed with opts.
AnyGraph load_graph(const std::filesystem::path& path,
                    const ParseOptions& opts = {});

// Writes through a temporary file in the same directory, then renames it over
// `path`. On error the temporary is removed and `path` is left untouched.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer);

}  // namespace sknet
