#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sknet/graph.hpp"
#include "sknet/partition.hpp"

namespace sknet {

// Stochastic block model. Nodes are numbered block by block.
struct SbmParams {
  std::vector<std::size_t> block_sizes;
  // Symmetric k x k matrix of edge probabilities in [0, 1].
  std::vector<std::vector<double>> block_probs;
  std::uint64_t seed = 0;

  // Equal-probability blocks: p_in on the diagonal, p_out elsewhere.
  static SbmParams planted(std::vector<std::size_t> sizes, double p_in,
                           double p_out, std::uint64_t seed = 0);
};

// Undirected simple graph; each pair {i, j} is an independent Bernoulli draw.
// Sampling skips geometrically between successes, so the cost is linear in
// the number of edges. Bit-reproducible for a fixed seed.
Graph generate_sbm(const SbmParams& params);

// Block index of every node.
Partition sbm_blocks(const SbmParams& params);

}  // namespace sknet
