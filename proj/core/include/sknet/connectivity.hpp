#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "sknet/graph.hpp"
#include "sknet/partition.hpp"

namespace sknet {

struct PathResult {
  static constexpr double kUnreachable = std::numeric_limits<double>::max();
  static constexpr std::int64_t kNoPredecessor = -1;

  std::vector<double> dist;
  // pred[source] == source; kNoPredecessor for unreachable nodes.
  std::vector<std::int64_t> pred;

  bool reachable(std::size_t v) const { return dist[v] != kUnreachable; }
};

// Hop distances along out-edges, neighbors visited in CSR order.
PathResult bfs(const Graph& g, std::size_t source);

// Weighted distances with a binary heap ordered by (distance, node id).
PathResult dijkstra(const Graph& g, std::size_t source);

// Nodes from source to target following pred; empty if unreachable.
std::vector<std::size_t> path_to(const PathResult& r, std::size_t target);

// Weakly connected components, labeled in order of their smallest node.
Partition connected_components(const Graph& g);

// Tarjan's algorithm with an explicit stack. Components are labeled in the
// order they complete, i.e. reverse topological order of the condensation.
Partition strongly_connected_components(const Graph& g);

}  // namespace sknet
