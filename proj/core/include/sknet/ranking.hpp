#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sknet/graph.hpp"

namespace sknet {

struct PageRankParams {
  double damping = 0.85;
  std::size_t iterations = 100;
  // Restart distribution; uniform when empty. Must sum to 1.
  std::vector<double> restart;
  // Stop early once the L1 change of an iteration falls below this value.
  std::optional<double> tolerance;
};

struct PageRankResult {
  std::vector<double> scores;
  std::size_t iterations = 0;
};

// Power iteration x <- d (P^T x + dangling(x) r) + (1 - d) r starting from
// x = r, with P the row-normalized adjacency and dangling(x) the mass on
// nodes without out-edges.
PageRankResult pagerank_run(const Graph& g, const PageRankParams& params = {});
std::vector<double> pagerank(const Graph& g, const PageRankParams& params = {});

struct HitsParams {
  std::size_t iterations = 100;
  // Stop once both vectors move by less than this in max norm.
  double tolerance = 0.0;
};

struct HitsScores {
  std::vector<double> hubs;
  std::vector<double> authorities;
  std::size_t iterations = 0;
};

// a <- A^T h / |A^T h|, h <- A a / |A a| from h = 1. Unit-norm outputs.
// Throws DegenerateInputError on an edgeless graph.
HitsScores hits(const Graph& g, const HitsParams& params = {});

// sum_{t=1..depth} alpha^t (A^T)^t 1.
std::vector<double> katz(const Graph& g, double alpha, std::size_t depth);

// sum over nodes j reachable from i of 1 / hops(i, j), following out-edges.
std::vector<double> harmonic_centrality(const Graph& g);

}  // namespace sknet
