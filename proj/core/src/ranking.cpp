#include "sknet/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sknet/error.hpp"
#include "sknet/parallel.hpp"

namespace sknet {

namespace {

std::vector<double> checked_restart(const PageRankParams& p, std::size_t n) {
  if (n == 0) throw ParameterError("PageRank needs at least one node");
  if (!(p.damping >= 0.0 && p.damping < 1.0)) {
    throw ParameterError("damping must lie in [0, 1), got " +
                         std::to_string(p.damping));
  }
  if (p.tolerance && !(*p.tolerance >= 0.0)) {
    throw ParameterError("tolerance must be >= 0");
  }
  if (p.restart.empty()) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  if (p.restart.size() != n) {
    throw ParameterError("restart vector has " + std::to_string(p.restart.size()) +
                         " entries for " + std::to_string(n) + " nodes");
  }
  double total = 0.0;
  for (double v : p.restart) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ParameterError("restart probabilities must be finite and >= 0");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ParameterError("restart vector must sum to 1, sums to " +
                         std::to_string(total));
  }
  return p.restart;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

PageRankResult pagerank_run(const Graph& g, const PageRankParams& params) {
  const std::size_t n = g.n_nodes();
  const std::vector<double> restart = checked_restart(params, n);
  const double d = params.damping;

  const CsrMatrix transition = transpose(normalize_rows(g.adjacency()));
  const std::vector<double> out_degree = degrees(g.adjacency(), Axis::kRows);
  std::vector<std::size_t> dangling;
  for (std::size_t i = 0; i < n; ++i) {
    if (out_degree[i] <= 0.0) dangling.push_back(i);
  }

  PageRankResult result;
  std::vector<double> x = restart;
  std::vector<double> y(n);
  const std::size_t chunks = default_chunks(transition);
  for (std::size_t it = 0; it < params.iterations; ++it) {
    matvec(transition, x, y, chunks);
    double dangling_mass = 0.0;
    for (std::size_t i : dangling) dangling_mass += x[i];
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double next = d * (y[i] + dangling_mass * restart[i]) + (1.0 - d) * restart[i];
      change += std::abs(next - x[i]);
      x[i] = next;
    }
    result.iterations = it + 1;
    if (params.tolerance && change < *params.tolerance) break;
  }
  result.scores = std::move(x);
  return result;
}

std::vector<double> pagerank(const Graph& g, const PageRankParams& params) {
  return pagerank_run(g, params).scores;
}

HitsScores hits(const Graph& g, const HitsParams& params) {
  const CsrMatrix& a = g.adjacency();
  if (a.nnz() == 0) throw DegenerateInputError("HITS is undefined on an edgeless graph");
  const CsrMatrix at = transpose(a);
  const std::size_t n = g.n_nodes();

  HitsScores s;
  s.hubs.assign(n, 1.0);
  s.authorities.assign(n, 0.0);
  std::vector<double> prev_a(n, 0.0), prev_h(n, 0.0);
  for (std::size_t it = 0; it < std::max<std::size_t>(1, params.iterations); ++it) {
    prev_a.swap(s.authorities);
    prev_h = s.hubs;
    matvec(at, s.hubs, s.authorities);
    const double na = norm2(s.authorities);
    if (na == 0.0) throw DegenerateInputError("HITS authority vector vanished");
    for (double& v : s.authorities) v /= na;
    matvec(a, s.authorities, s.hubs);
    const double nh = norm2(s.hubs);
    for (double& v : s.hubs) v /= nh;
    s.iterations = it + 1;

    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      delta = std::max({delta, std::abs(s.authorities[i] - prev_a[i]),
                        std::abs(s.hubs[i] - prev_h[i])});
    }
    if (it > 0 && delta < params.tolerance) break;
  }
  return s;
}

std::vector<double> katz(const Graph& g, double alpha, std::size_t depth) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("Katz alpha must be finite and >= 0");
  }
  const std::size_t n = g.n_nodes();
  const CsrMatrix at = transpose(g.adjacency());
  std::vector<double> walk(n, 1.0), next(n), scores(n, 0.0);
  for (std::size_t t = 0; t < depth; ++t) {
    matvec(at, walk, next);
    for (std::size_t i = 0; i < n; ++i) {
      walk[i] = alpha * next[i];
      scores[i] += walk[i];
    }
  }
  return scores;
}

std::vector<double> harmonic_centrality(const Graph& g) {
  const CsrMatrix& a = g.adjacency();
  const std::size_t n = g.n_nodes();
  std::vector<double> scores(n, 0.0);
  parallel_for_chunks(n, num_threads(), [&](std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> dist(n, -1);
    std::vector<std::size_t> queue;
    queue.reserve(n);
    for (std::size_t s = begin; s < end; ++s) {
      queue.clear();
      queue.push_back(s);
      dist[s] = 0;
      double total = 0.0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t u = queue[head];
        a.for_each_in_row(u, [&](std::uint64_t v, double) {
          if (dist[v] >= 0) return;
          dist[v] = dist[u] + 1;
          total += 1.0 / static_cast<double>(dist[v]);
          queue.push_back(v);
        });
      }
      scores[s] = total;
      for (std::size_t v : queue) dist[v] = -1;
    }
  });
  return scores;
}

}  // namespace sknet
