#include "sknet/partition.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "sknet/error.hpp"

namespace sknet {

Partition Partition::compact(std::span<const std::int64_t> labels) {
  Partition p;
  p.labels.resize(labels.size());
  std::unordered_map<std::int64_t, std::int64_t> ids;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) {
      p.labels[i] = kUnknownLabel;
      continue;
    }
    auto [it, inserted] =
        ids.try_emplace(labels[i], static_cast<std::int64_t>(ids.size()));
    p.labels[i] = it->second;
  }
  p.n_clusters = ids.size();
  return p;
}

Partition Partition::singletons(std::size_t n) {
  Partition p;
  p.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.labels[i] = static_cast<std::int64_t>(i);
  p.n_clusters = n;
  return p;
}

std::vector<std::size_t> Partition::cluster_sizes() const {
  std::vector<std::size_t> sizes(n_clusters, 0);
  for (std::int64_t l : labels) {
    if (l >= 0 && static_cast<std::size_t>(l) < n_clusters) ++sizes[l];
  }
  return sizes;
}

namespace {

// Minimum-cost perfect assignment on an n x n matrix (Jonker-Volgenant style
// potentials). Returns the column assigned to each row.
std::vector<std::size_t> min_cost_assignment(
    const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

double matched_agreement(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) {
    throw DimensionError("partitions have different lengths");
  }
  if (a.size() == 0) return 1.0;
  const Partition ca = Partition::compact(a.labels);
  const Partition cb = Partition::compact(b.labels);
  const std::size_t k = std::max({ca.n_clusters, cb.n_clusters, std::size_t{1}});
  std::vector<std::vector<double>> counts(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ca.labels[i] < 0 || cb.labels[i] < 0) continue;
    counts[ca.labels[i]][cb.labels[i]] += 1.0;
  }
  std::vector<std::vector<double>> cost(k, std::vector<double>(k));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) cost[r][c] = -counts[r][c];
  }
  const auto match = min_cost_assignment(cost);
  double agree = 0.0;
  for (std::size_t r = 0; r < k; ++r) agree += counts[r][match[r]];
  return agree / static_cast<double>(a.size());
}

}  // namespace sknet
