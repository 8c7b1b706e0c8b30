#include "sknet/connectivity.hpp"

#include <functional>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

#include "sknet/error.hpp"

namespace sknet {

namespace {

PathResult unreached(const Graph& g, std::size_t source) {
  const std::size_t n = g.n_nodes();
  if (source >= n) {
    throw ParameterError("source " + std::to_string(source) +
                         " out of range for " + std::to_string(n) + " nodes");
  }
  PathResult r;
  r.dist.assign(n, PathResult::kUnreachable);
  r.pred.assign(n, PathResult::kNoPredecessor);
  r.dist[source] = 0.0;
  r.pred[source] = static_cast<std::int64_t>(source);
  return r;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

PathResult bfs(const Graph& g, std::size_t source) {
  PathResult r = unreached(g, source);
  const CsrMatrix& a = g.adjacency();
  std::vector<std::size_t> queue{source};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    a.for_each_in_row(u, [&](std::uint64_t v, double) {
      if (r.reachable(v)) return;
      r.dist[v] = r.dist[u] + 1.0;
      r.pred[v] = static_cast<std::int64_t>(u);
      queue.push_back(v);
    });
  }
  return r;
}

PathResult dijkstra(const Graph& g, std::size_t source) {
  PathResult r = unreached(g, source);
  const CsrMatrix& a = g.adjacency();
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<char> done(g.n_nodes(), 0);
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    a.for_each_in_row(u, [&](std::uint64_t v, double w) {
      if (done[v]) return;
      const double candidate = du + w;
      if (candidate < r.dist[v]) {
        r.dist[v] = candidate;
        r.pred[v] = static_cast<std::int64_t>(u);
        heap.push({candidate, static_cast<std::size_t>(v)});
      }
    });
  }
  return r;
}

std::vector<std::size_t> path_to(const PathResult& r, std::size_t target) {
  if (target >= r.dist.size()) {
    throw ParameterError("target " + std::to_string(target) + " out of range");
  }
  if (!r.reachable(target)) return {};
  std::vector<std::size_t> path{target};
  while (r.pred[path.back()] != static_cast<std::int64_t>(path.back())) {
    path.push_back(static_cast<std::size_t>(r.pred[path.back()]));
  }
  return {path.rbegin(), path.rend()};
}

Partition connected_components(const Graph& g) {
  const std::size_t n = g.n_nodes();
  const CsrMatrix& a = g.adjacency();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) {
    a.for_each_in_row(i, [&](std::uint64_t j, double) {
      const std::size_t ri = find_root(parent, i);
      const std::size_t rj = find_root(parent, j);
      if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
    });
  }
  std::vector<std::int64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<std::int64_t>(find_root(parent, i));
  }
  return Partition::compact(labels);
}

Partition strongly_connected_components(const Graph& g) {
  const std::size_t n = g.n_nodes();
  const CsrMatrix& a = g.adjacency();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  // (node, next position in its row)
  std::vector<std::pair<std::size_t, std::size_t>> call;
  Partition p;
  p.labels.assign(n, 0);
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, a.row_begin(root)});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, k] = call.back();
      if (k < a.row_end(v)) {
        const std::size_t w = a.col(k++);
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, a.row_begin(w)});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          p.labels[w] = static_cast<std::int64_t>(p.n_clusters);
        } while (w != done);
        ++p.n_clusters;
      }
    }
  }
  return p;
}

}  // namespace sknet
