#include "sknet/clustering.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sknet/error.hpp"

namespace sknet {

namespace {

void check_labels(std::span<const std::int64_t> labels, std::size_t n,
                  std::size_t* n_clusters) {
  if (labels.size() != n) {
    throw DimensionError("partition has " + std::to_string(labels.size()) +
                         " labels for " + std::to_string(n) + " nodes");
  }
  std::int64_t max_label = -1;
  for (std::int64_t l : labels) {
    if (l < 0) throw ParameterError("partition contains unassigned nodes");
    max_label = std::max(max_label, l);
  }
  if (n_clusters) *n_clusters = static_cast<std::size_t>(max_label + 1);
}

void check_resolution(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw ParameterError("resolution must be finite and > 0");
  }
}

CsrMatrix aggregate_matrix(const CsrMatrix& a, std::span<const std::int64_t> labels,
                           std::size_t k) {
  std::vector<Edge> edges;
  edges.reserve(a.nnz());
  for (std::size_t i = 0; i < a.n_rows(); ++i) {
    const auto ci = static_cast<std::uint64_t>(labels[i]);
    a.for_each_in_row(i, [&](std::uint64_t j, double w) {
      edges.push_back({ci, static_cast<std::uint64_t>(labels[j]), w});
    });
  }
  return CsrMatrix::from_edges(edges, k, k);
}

std::vector<std::size_t> shuffled_order(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

// Local-move phase on one level. Labels start as singletons; returns the
// modularity gained.
double local_moves(const CsrMatrix& a, std::span<const double> degree,
                   double two_w, const LouvainParams& params, std::size_t level,
                   std::mt19937_64& rng, std::vector<std::int64_t>& labels) {
  const std::size_t n = a.n_rows();
  const double r = params.resolution;
  labels.resize(n);
  std::iota(labels.begin(), labels.end(), std::int64_t{0});
  std::vector<double> cluster_degree(degree.begin(), degree.end());
  std::vector<double> link(n, 0.0);
  std::vector<std::size_t> touched;
  const std::vector<std::size_t> order = shuffled_order(n, rng);

  double pass_gain = 0.0;
  while (true) {
    double sweep_gain = 0.0;
    for (std::size_t i : order) {
      const std::int64_t current = labels[i];
      touched.clear();
      a.for_each_in_row(i, [&](std::uint64_t j, double w) {
        if (j == i) return;
        const auto c = static_cast<std::size_t>(labels[j]);
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += w;
      });

      const double di = degree[i];
      cluster_degree[current] -= di;
      auto gain = [&](std::size_t c) {
        return link[c] - r * di * cluster_degree[c] / two_w;
      };
      const double current_gain = gain(static_cast<std::size_t>(current));
      std::int64_t best = current;
      double best_gain = current_gain;
      for (std::size_t c : touched) {
        const double g = gain(c);
        const auto label = static_cast<std::int64_t>(c);
        if (g > best_gain ||
            (g == best_gain && best != current && label < best)) {
          best = label;
          best_gain = g;
        }
      }
      for (std::size_t c : touched) link[c] = 0.0;
      cluster_degree[best] += di;

      if (best != current) {
        labels[i] = best;
        const double delta_q = 2.0 * (best_gain - current_gain) / two_w;
        sweep_gain += delta_q;
        if (params.on_move) {
          params.on_move(LouvainMove{level, i, current, best, delta_q, &a, labels});
        }
      }
    }
    pass_gain += sweep_gain;
    if (sweep_gain <= params.tol_gain) break;
  }
  return pass_gain;
}

}  // namespace

double modularity(const CsrMatrix& a, std::span<const std::int64_t> labels,
                  double resolution) {
  check_resolution(resolution);
  std::size_t k = 0;
  check_labels(labels, a.n_rows(), &k);
  std::vector<double> cluster_degree(k, 0.0);
  double inside = 0.0;
  double two_w = 0.0;
  for (std::size_t i = 0; i < a.n_rows(); ++i) {
    a.for_each_in_row(i, [&](std::uint64_t j, double w) {
      two_w += w;
      cluster_degree[labels[i]] += w;
      if (labels[i] == labels[j]) inside += w;
    });
  }
  if (two_w == 0.0) return 0.0;
  double expected = 0.0;
  for (double d : cluster_degree) expected += (d / two_w) * (d / two_w);
  return inside / two_w - resolution * expected;
}

double modularity(const Graph& g, const Partition& p, double resolution) {
  if (g.directed()) return modularity(symmetrize(g.adjacency()), p.labels, resolution);
  return modularity(g.adjacency(), p.labels, resolution);
}

LouvainResult louvain_run(const Graph& g, const LouvainParams& params) {
  check_resolution(params.resolution);
  if (!(params.tol_gain >= 0.0)) throw ParameterError("tol_gain must be >= 0");

  const std::size_t n = g.n_nodes();
  LouvainResult result;
  CsrMatrix level_graph = undirected_adjacency(g);
  const double two_w = [&] {
    double s = 0.0;
    for (double w : level_graph.data()) s += w;
    return s;
  }();
  std::vector<std::int64_t> node_labels(n);
  std::iota(node_labels.begin(), node_labels.end(), std::int64_t{0});
  if (n == 0 || two_w == 0.0) {
    result.partition = Partition::compact(node_labels);
    return result;
  }

  std::mt19937_64 rng(params.seed);
  std::vector<std::int64_t> level_labels;
  for (std::size_t pass = 0; pass < params.max_passes; ++pass) {
    const std::vector<double> degree = degrees(level_graph, Axis::kRows);
    const double gained = local_moves(level_graph, degree, two_w, params, pass,
                                      rng, level_labels);
    result.passes = pass + 1;
    const Partition compacted = Partition::compact(level_labels);
    for (auto& l : node_labels) l = compacted.labels[l];
    if (gained <= params.tol_gain || compacted.n_clusters == level_graph.n_rows()) {
      break;
    }
    level_graph = aggregate_matrix(level_graph, compacted.labels, compacted.n_clusters);
  }
  result.partition = Partition::compact(node_labels);
  result.modularity = modularity(g, result.partition, params.resolution);
  return result;
}

Partition louvain(const Graph& g, const LouvainParams& params) {
  return louvain_run(g, params).partition;
}

CsrMatrix soft_membership(const Graph& g, const Partition& p) {
  std::size_t k = 0;
  check_labels(p.labels, g.n_nodes(), &k);
  k = std::max(k, p.n_clusters);
  const CsrMatrix a = undirected_adjacency(g);
  std::vector<Edge> entries;
  entries.reserve(a.nnz());
  std::vector<Edge> row;
  for (std::size_t i = 0; i < a.n_rows(); ++i) {
    row.clear();
    double total = 0.0;
    a.for_each_in_row(i, [&](std::uint64_t j, double w) {
      row.push_back({i, static_cast<std::uint64_t>(p.labels[j]), w});
      total += w;
    });
    if (total <= 0.0) {
      entries.push_back({i, static_cast<std::uint64_t>(p.labels[i]), 1.0});
      continue;
    }
    for (Edge& e : row) {
      e.weight /= total;
      entries.push_back(e);
    }
  }
  return CsrMatrix::from_edges(entries, a.n_rows(), k);
}

Graph aggregate(const Graph& g, const Partition& p) {
  std::size_t k = 0;
  check_labels(p.labels, g.n_nodes(), &k);
  k = std::max(k, p.n_clusters);
  return Graph(aggregate_matrix(g.adjacency(), p.labels, k), g.directed());
}

}  // namespace sknet
