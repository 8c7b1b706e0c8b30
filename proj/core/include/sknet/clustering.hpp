#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "sknet/csr.hpp"
#include "sknet/graph.hpp"
#include "sknet/partition.hpp"

namespace sknet {

// Newman modularity with resolution r on the undirected view of g:
//   Q = sum_c [ w_c / w - r (d_c / 2w)^2 ]
// with w the total edge weight, w_c the weight inside cluster c and d_c the
// total degree of c. Returns 0 for a graph without edges.
double modularity(const Graph& g, const Partition& p, double resolution = 1.0);
double modularity(const CsrMatrix& symmetric_adjacency,
                  std::span<const std::int64_t> labels, double resolution = 1.0);

// One accepted local move of the Louvain sweep, reported on the graph of the
// current level (level 0 is the input graph).
struct LouvainMove {
  std::size_t level = 0;
  std::size_t node = 0;
  std::int64_t from = 0;
  std::int64_t to = 0;
  // Incremental modularity gain used to accept the move.
  double delta_q = 0.0;
  const CsrMatrix* level_adjacency = nullptr;
  // Labels of the level's nodes after the move.
  std::span<const std::int64_t> level_labels;
};

struct LouvainParams {
  double resolution = 1.0;
  double tol_gain = 1e-9;
  std::size_t max_passes = 100;
  std::uint64_t seed = 0;
  // Called after every accepted move; intended for instrumentation.
  std::function<void(const LouvainMove&)> on_move;
};

struct LouvainResult {
  Partition partition;
  double modularity = 0.0;
  std::size_t passes = 0;
};

// Greedy modularity maximization: seeded shuffled local moves, then
// contraction of clusters into super-nodes, repeated until a pass gains no
// more than tol_gain. Directed graphs are symmetrized first.
LouvainResult louvain_run(const Graph& g, const LouvainParams& params = {});
Partition louvain(const Graph& g, const LouvainParams& params = {});

// Row i spreads node i's edge weight over the clusters of its neighbors.
// Isolated nodes get weight 1 on their own cluster. n x n_clusters.
CsrMatrix soft_membership(const Graph& g, const Partition& p);

// k x k graph with weight(c1, c2) = sum of A_ij over i in c1, j in c2, i.e.
// M^T A M for the membership matrix M. Intra-cluster weight lands on the
// diagonal; for undirected graphs it keeps the doubled self-loop convention.
Graph aggregate(const Graph& g, const Partition& p);

}  // namespace sknet
