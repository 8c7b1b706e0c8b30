#include "sknet/classification.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sknet/error.hpp"
#include "sknet/ranking.hpp"

namespace sknet {

namespace {

std::vector<std::int64_t> checked_labels(const Graph& g, const SeedLabels& seeds) {
  if (seeds.empty()) throw ParameterError("at least one seed is required");
  std::vector<std::int64_t> labels;
  for (const auto& [node, label] : seeds) {
    if (node >= g.n_nodes()) {
      throw ParameterError("seed node " + std::to_string(node) + " out of range for " +
                           std::to_string(g.n_nodes()) + " nodes");
    }
    if (label < 0) throw ParameterError("seed labels must be >= 0");
    labels.push_back(label);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.size() < 2) throw ParameterError("seeds must carry at least two labels");
  return labels;
}

std::size_t n_clusters_for(const std::vector<std::int64_t>& labels) {
  return static_cast<std::size_t>(labels.back() + 1);
}

}  // namespace

ClassifierScores pagerank_classifier_scores(const Graph& g, const SeedLabels& seeds,
                                            double damping, std::size_t iterations) {
  ClassifierScores out;
  out.labels = checked_labels(g, seeds);
  const std::size_t n = g.n_nodes();
  for (std::int64_t label : out.labels) {
    std::size_t count = 0;
    for (const auto& [node, l] : seeds) count += l == label;
    PageRankParams p;
    p.damping = damping;
    p.iterations = iterations;
    p.restart.assign(n, 0.0);
    for (const auto& [node, l] : seeds) {
      if (l == label) p.restart[node] = 1.0 / static_cast<double>(count);
    }
    std::vector<double> s = pagerank(g, p);
    for (double& v : s) v /= static_cast<double>(count);
    out.scores.push_back(std::move(s));
  }
  return out;
}

Partition pagerank_classifier(const Graph& g, const SeedLabels& seeds, double damping,
                              std::size_t iterations) {
  const ClassifierScores sc = pagerank_classifier_scores(g, seeds, damping, iterations);
  Partition p;
  p.n_clusters = n_clusters_for(sc.labels);
  p.labels.assign(g.n_nodes(), Partition::kUnknownLabel);
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    std::size_t best = 0;
    for (std::size_t l = 1; l < sc.labels.size(); ++l) {
      const double s = sc.scores[l][i];
      const double b = sc.scores[best][i];
      if (s - b > 1e-12 * std::max(std::abs(s), std::abs(b))) best = l;
    }
    if (sc.scores[best][i] > 0.0) p.labels[i] = sc.labels[best];
  }
  for (const auto& [node, label] : seeds) p.labels[node] = label;
  return p;
}

Partition label_propagation(const Graph& g, const SeedLabels& seeds,
                            std::size_t max_iters) {
  const std::vector<std::int64_t> labels = checked_labels(g, seeds);
  const std::size_t n = g.n_nodes();
  const CsrMatrix a = undirected_adjacency(g);
  std::vector<std::int64_t> current(n, Partition::kUnknownLabel);
  std::vector<char> is_seed(n, 0);
  for (const auto& [node, label] : seeds) {
    current[node] = label;
    is_seed[node] = 1;
  }
  // Votes are indexed by position in the sorted label list.
  std::vector<double> votes(labels.size(), 0.0);
  auto position = [&](std::int64_t label) {
    return static_cast<std::size_t>(
        std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  };
  std::vector<std::int64_t> next = current;
  for (std::size_t it = 0; it < max_iters; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_seed[i]) continue;
      std::fill(votes.begin(), votes.end(), 0.0);
      bool any = false;
      a.for_each_in_row(i, [&](std::uint64_t j, double w) {
        if (j == i || current[j] == Partition::kUnknownLabel) return;
        votes[position(current[j])] += w;
        any = true;
      });
      std::int64_t chosen = current[i];
      if (any) {
        const auto best = std::max_element(votes.begin(), votes.end()) - votes.begin();
        chosen = labels[static_cast<std::size_t>(best)];
      }
      next[i] = chosen;
      changed |= chosen != current[i];
    }
    current.swap(next);
    if (!changed) break;
  }
  Partition p;
  p.labels = std::move(current);
  p.n_clusters = n_clusters_for(labels);
  return p;
}

}  // namespace sknet
