#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sknet {

// Node -> cluster labels. Labels produced by the library are contiguous and
// 0-based; classifiers may additionally emit kUnknownLabel.
struct Partition {
  static constexpr std::int64_t kUnknownLabel = -1;

  std::vector<std::int64_t> labels;
  std::size_t n_clusters = 0;

  std::size_t size() const { return labels.size(); }

  // Relabels to 0..k-1 in order of first appearance. Unknown labels are kept.
  static Partition compact(std::span<const std::int64_t> labels);
  static Partition singletons(std::size_t n);

  std::vector<std::size_t> cluster_sizes() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// Fraction of nodes on which two partitions agree after the best one-to-one
// matching of their labels (Hungarian assignment on the contingency table).
double matched_agreement(const Partition& a, const Partition& b);

}  // namespace sknet
