#include "sknet/graph.hpp"

#include <charconv>
#include <string>
#include <utility>

#include "sknet/error.hpp"

namespace sknet {

Graph::Graph(CsrMatrix adjacency, bool directed, std::vector<std::string> names)
    : adjacency_(std::move(adjacency)),
      directed_(directed),
      names_(std::move(names)) {
  if (!adjacency_.square()) {
    throw DimensionError("adjacency must be square, got " +
                         std::to_string(adjacency_.n_rows()) + "x" +
                         std::to_string(adjacency_.n_cols()));
  }
  if (!names_.empty() && names_.size() != adjacency_.n_rows()) {
    throw DimensionError("expected " + std::to_string(adjacency_.n_rows()) +
                         " node names, got " + std::to_string(names_.size()));
  }
  if (!directed_ && !(transpose(adjacency_) == adjacency_)) {
    throw ConstructionError("undirected graph requires a symmetric adjacency");
  }
}

Graph Graph::from_edges(std::span<const Edge> edges, std::size_t n,
                        bool directed, std::vector<std::string> names) {
  CsrMatrix m = CsrMatrix::from_edges(edges, n, n);
  if (!directed) m = symmetrize(m);
  return Graph(std::move(m), directed, std::move(names));
}

std::size_t Graph::n_edges() const {
  if (directed_) return adjacency_.nnz();
  const std::size_t loops = count_diagonal(adjacency_);
  return (adjacency_.nnz() - loops) / 2 + loops;
}

std::string Graph::label(std::size_t i) const {
  return names_.empty() ? std::to_string(i) : names_[i];
}

std::optional<std::size_t> Graph::find(const std::string& label) const {
  if (!names_.empty()) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == label) return i;
    }
    return std::nullopt;
  }
  std::size_t id = 0;
  auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), id);
  if (ec != std::errc() || ptr != label.data() + label.size() ||
      id >= n_nodes()) {
    return std::nullopt;
  }
  return id;
}

BipartiteGraph::BipartiteGraph(CsrMatrix biadjacency,
                               std::vector<std::string> row_names,
                               std::vector<std::string> col_names)
    : biadjacency_(std::move(biadjacency)),
      row_names_(std::move(row_names)),
      col_names_(std::move(col_names)) {
  if (!row_names_.empty() && row_names_.size() != biadjacency_.n_rows()) {
    throw DimensionError("row names do not match the row count");
  }
  if (!col_names_.empty() && col_names_.size() != biadjacency_.n_cols()) {
    throw DimensionError("column names do not match the column count");
  }
}

std::string BipartiteGraph::row_label(std::size_t i) const {
  return row_names_.empty() ? std::to_string(i) : row_names_[i];
}

std::string BipartiteGraph::col_label(std::size_t j) const {
  return col_names_.empty() ? std::to_string(j) : col_names_[j];
}

Graph bipartite_adjacency(const BipartiteGraph& b) {
  const std::size_t r = b.n_rows();
  const std::size_t n = r + b.n_cols();
  std::vector<Edge> edges;
  edges.reserve(2 * b.n_edges());
  const CsrMatrix& m = b.biadjacency();
  for (std::size_t i = 0; i < r; ++i) {
    m.for_each_in_row(i, [&](std::uint64_t j, double w) {
      edges.push_back({i, r + j, w});
      edges.push_back({r + j, i, w});
    });
  }
  std::vector<std::string> names;
  if (!b.row_names().empty() || !b.col_names().empty()) {
    names.reserve(n);
    for (std::size_t i = 0; i < r; ++i) names.push_back(b.row_label(i));
    for (std::size_t j = 0; j < b.n_cols(); ++j) names.push_back(b.col_label(j));
  }
  return Graph(CsrMatrix::from_edges(edges, n, n), false, std::move(names));
}

Graph as_graph(const AnyGraph& g) {
  if (const auto* graph = std::get_if<Graph>(&g)) return *graph;
  return bipartite_adjacency(std::get<BipartiteGraph>(g));
}

CsrMatrix undirected_adjacency(const Graph& g) {
  return g.directed() ? symmetrize(g.adjacency()) : g.adjacency();
}

}  // namespace sknet
