#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "sknet/graph.hpp"
#include "sknet/partition.hpp"

namespace sknet {

// Merge t joins clusters a and b into cluster n + t. Ids below n are leaves.
struct Merge {
  std::size_t a = 0;
  std::size_t b = 0;
  double height = 0.0;
  std::size_t size = 0;

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
  std::size_t n_leaves = 0;
  std::vector<Merge> merges;

  friend bool operator==(const Dendrogram&, const Dendrogram&) = default;
};

// Empty string for a valid dendrogram, otherwise a description of the first
// violated invariant.
std::string dendrogram_error(const Dendrogram& d);
// Throws FormatError if dendrogram_error() is non-empty.
void validate_dendrogram(const Dendrogram& d);

// Leaves in drawing order (depth first, child a before child b).
std::vector<std::size_t> leaf_order(const Dendrogram& d);

struct Agglomeration {
  // Leaves are the nodes of leaf_nodes, in that order.
  Dendrogram dendrogram;
  std::vector<std::size_t> leaf_nodes;
  // Nodes outside the largest connected component; empty if g is connected.
  std::vector<std::size_t> dropped_nodes;

  bool restricted() const { return !dropped_nodes.empty(); }
};

// Nearest-neighbor chain agglomeration with the linkage
//   d(a, b) = w_a w_b / (w w_ab)
// where w_a is the degree share of cluster a, w the total edge weight and
// w_ab the weight between a and b. Only linked clusters are candidates.
// Directed graphs are symmetrized; only the largest component is clustered.
// Heights are made non-decreasing by a running maximum.
// Throws DegenerateInputError on an edgeless graph.
Agglomeration agglomerate(const Graph& g);

// Undoes the last n_clusters - 1 merges. Clusters are numbered by their
// smallest leaf.
Partition cut_straight(const Dendrogram& d, std::size_t n_clusters);

struct CompressedDendrogram {
  Dendrogram dendrogram;
  // groups[i] are the original leaves collapsed into new leaf i, ascending.
  std::vector<std::vector<std::size_t>> groups;
};

// Collapses every maximal subtree with fewer than min_size leaves into a single
// leaf; the surviving merges keep their heights. New leaves are ordered by
// their smallest original leaf. Requires 1 <= min_size < n_leaves.
CompressedDendrogram compress(const Dendrogram& d, std::size_t min_size);

// One merge per line: a<TAB>b<TAB>height<TAB>size.
void write_dendrogram(std::ostream& out, const Dendrogram& d);
// Reads the format above; n_leaves is the number of lines plus one.
// Throws ParseError on malformed lines and FormatError on invalid structure.
Dendrogram read_dendrogram(std::istream& in);

}  // namespace sknet
