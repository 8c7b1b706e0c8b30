#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sknet/csr.hpp"

namespace sknet {

// Square adjacency matrix with optional node labels. Undirected graphs store
// both directions of every edge; a self-loop of weight w is stored as 2w on
// the diagonal, so row sums are the usual degrees.
class Graph {
 public:
  Graph() = default;
  // Throws DimensionError for a non-square matrix or a names array of the
  // wrong length, ConstructionError for an asymmetric undirected adjacency.
  Graph(CsrMatrix adjacency, bool directed,
        std::vector<std::string> names = {});

  // Edges (u, v, w) for u, v < n. Undirected input is symmetrized.
  static Graph from_edges(std::span<const Edge> edges, std::size_t n,
                          bool directed, std::vector<std::string> names = {});

  const CsrMatrix& adjacency() const { return adjacency_; }
  bool directed() const { return directed_; }
  std::size_t n_nodes() const { return adjacency_.n_rows(); }
  // Directed: stored entries. Undirected: unordered pairs, self-loops once.
  std::size_t n_edges() const;
  bool has_names() const { return !names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  // names()[i] when present, else the decimal id.
  std::string label(std::size_t i) const;
  // Node id for a label: a name when names exist, otherwise a decimal id.
  std::optional<std::size_t> find(const std::string& label) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  CsrMatrix adjacency_;
  bool directed_ = false;
  std::vector<std::string> names_;
};

// Rows and columns are two distinct node sets.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(CsrMatrix biadjacency, std::vector<std::string> row_names = {},
                 std::vector<std::string> col_names = {});

  const CsrMatrix& biadjacency() const { return biadjacency_; }
  std::size_t n_rows() const { return biadjacency_.n_rows(); }
  std::size_t n_cols() const { return biadjacency_.n_cols(); }
  std::size_t n_edges() const { return biadjacency_.nnz(); }
  const std::vector<std::string>& row_names() const { return row_names_; }
  const std::vector<std::string>& col_names() const { return col_names_; }
  std::string row_label(std::size_t i) const;
  std::string col_label(std::size_t j) const;

  friend bool operator==(const BipartiteGraph&,
                         const BipartiteGraph&) = default;

 private:
  CsrMatrix biadjacency_;
  std::vector<std::string> row_names_;
  std::vector<std::string> col_names_;
};

using AnyGraph = std::variant<Graph, BipartiteGraph>;

// Undirected graph on n_rows + n_cols nodes with adjacency [[0, B], [B^T, 0]].
// Row nodes come first. Names are carried over when either side has them.
Graph bipartite_adjacency(const BipartiteGraph& b);

// The graph itself, or its bipartite adjacency.
Graph as_graph(const AnyGraph& g);

// adjacency() for undirected graphs, symmetrize(adjacency()) for directed.
CsrMatrix undirected_adjacency(const Graph& g);

}  // namespace sknet
