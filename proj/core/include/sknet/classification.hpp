#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "sknet/graph.hpp"
#include "sknet/partition.hpp"

namespace sknet {

// node id -> label (>= 0). At least two distinct labels are required.
using SeedLabels = std::map<std::size_t, std::int64_t>;

struct ClassifierScores {
  // Distinct seed labels, ascending; column l of scores belongs to labels[l].
  std::vector<std::int64_t> labels;
  // scores[l][i]: personalized PageRank of node i for labels[l], divided by
  // the number of seeds carrying that label.
  std::vector<std::vector<double>> scores;
};

// One personalized PageRank per label, restarting uniformly on that label's
// seeds.
ClassifierScores pagerank_classifier_scores(const Graph& g, const SeedLabels& seeds,
                                            double damping = 0.85,
                                            std::size_t iterations = 100);

// Each node takes the label with the highest score; scores within a relative
// 1e-12 count as ties and go to the smallest label. Seeds keep their label.
// Nodes with zero score for every label get Partition::kUnknownLabel.
// Output labels are the seed label values; n_clusters is the largest + 1.
Partition pagerank_classifier(const Graph& g, const SeedLabels& seeds,
                              double damping = 0.85, std::size_t iterations = 100);

// Synchronous propagation: every non-seed node takes the label with the most
// incident weight among currently labeled neighbors (ties to the smallest).
// Stops at a fixpoint or after max_iters; unreached nodes get kUnknownLabel.
Partition label_propagation(const Graph& g, const SeedLabels& seeds,
                            std::size_t max_iters = 100);

}  // namespace sknet
