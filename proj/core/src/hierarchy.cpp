#include "sknet/hierarchy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "sknet/connectivity.hpp"
#include "sknet/error.hpp"

namespace sknet {

namespace {

struct RawMerge {
  std::size_t a;
  std::size_t b;
  double height;
  std::size_t size;
};

// Maps merge ids created by the chain to an order sorted by (height, creation)
// that still lists children before parents.
std::vector<Merge> sorted_merges(const std::vector<RawMerge>& raw, std::size_t m) {
  const std::size_t count = raw.size();
  std::vector<std::size_t> parent(m + count, count);
  for (std::size_t t = 0; t < count; ++t) {
    parent[raw[t].a] = t;
    parent[raw[t].b] = t;
  }
  std::vector<std::size_t> pending(count, 2);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (std::size_t t = 0; t < count; ++t) {
    pending[t] = (raw[t].a >= m) + (raw[t].b >= m);
    if (pending[t] == 0) ready.push({raw[t].height, t});
  }
  std::vector<std::size_t> new_id(m + count);
  std::iota(new_id.begin(), new_id.begin() + m, std::size_t{0});
  std::vector<Merge> out;
  out.reserve(count);
  while (!ready.empty()) {
    const std::size_t t = ready.top().second;
    ready.pop();
    const std::size_t a = new_id[raw[t].a];
    const std::size_t b = new_id[raw[t].b];
    new_id[m + t] = m + out.size();
    out.push_back({std::min(a, b), std::max(a, b), raw[t].height, raw[t].size});
    const std::size_t up = parent[m + t];
    if (up < count && --pending[up] == 0) ready.push({raw[up].height, up});
  }
  for (std::size_t t = 1; t < out.size(); ++t) {
    out[t].height = std::max(out[t].height, out[t - 1].height);
  }
  return out;
}

std::size_t cluster_size(const Dendrogram& d, std::size_t id) {
  return id < d.n_leaves ? 1 : d.merges[id - d.n_leaves].size;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

std::string dendrogram_error(const Dendrogram& d) {
  const std::size_t n = d.n_leaves;
  const std::size_t expected = n == 0 ? 0 : n - 1;
  if (d.merges.size() != expected) {
    return "expected " + std::to_string(expected) + " merges, found " +
           std::to_string(d.merges.size());
  }
  std::vector<char> used(n + d.merges.size(), 0);
  for (std::size_t t = 0; t < d.merges.size(); ++t) {
    const Merge& mg = d.merges[t];
    const std::string where = "merge " + std::to_string(t) + ": ";
    if (mg.a >= n + t || mg.b >= n + t) return where + "child id not yet defined";
    if (mg.a == mg.b) return where + "merges a cluster with itself";
    if (used[mg.a] || used[mg.b]) return where + "child already merged";
    used[mg.a] = used[mg.b] = 1;
    if (mg.size != cluster_size(d, mg.a) + cluster_size(d, mg.b)) {
      return where + "size is not the sum of the child sizes";
    }
    if (!std::isfinite(mg.height) || mg.height < 0.0) {
      return where + "height must be finite and >= 0";
    }
    if (t > 0 && mg.height < d.merges[t - 1].height) {
      return where + "heights decrease";
    }
  }
  if (!d.merges.empty() && d.merges.back().size != n) {
    return "final merge does not contain every leaf";
  }
  return {};
}

void validate_dendrogram(const Dendrogram& d) {
  const std::string err = dendrogram_error(d);
  if (!err.empty()) throw FormatError("invalid dendrogram: " + err);
}

std::vector<std::size_t> leaf_order(const Dendrogram& d) {
  const std::size_t n = d.n_leaves;
  if (n == 0) return {};
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::size_t> stack{n + d.merges.size() - 1};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    if (id < n) {
      order.push_back(id);
      continue;
    }
    const Merge& mg = d.merges[id - n];
    stack.push_back(mg.b);
    stack.push_back(mg.a);
  }
  return order;
}

Agglomeration agglomerate(const Graph& g) {
  const CsrMatrix full = undirected_adjacency(g);
  if (full.nnz() == 0) {
    throw DegenerateInputError("cannot build a hierarchy on an edgeless graph");
  }
  const Partition comps = connected_components(Graph(full, false));
  const std::vector<std::size_t> sizes = comps.cluster_sizes();
  const auto largest = static_cast<std::int64_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  Agglomeration result;
  std::vector<std::size_t> local(full.n_rows(), 0);
  for (std::size_t i = 0; i < full.n_rows(); ++i) {
    if (comps.labels[i] == largest) {
      local[i] = result.leaf_nodes.size();
      result.leaf_nodes.push_back(i);
    } else {
      result.dropped_nodes.push_back(i);
    }
  }
  const std::size_t m = result.leaf_nodes.size();
  result.dendrogram.n_leaves = m;
  if (m < 2) return result;

  const std::size_t ids = 2 * m - 1;
  std::vector<std::unordered_map<std::size_t, double>> nbr(ids);
  std::vector<double> weight(ids, 0.0);
  std::vector<std::size_t> size(ids, 1);
  double total = 0.0;
  for (std::size_t u = 0; u < m; ++u) {
    const std::size_t i = result.leaf_nodes[u];
    full.for_each_in_row(i, [&](std::uint64_t j, double w) {
      weight[u] += w;
      if (j != i) nbr[u][local[j]] += w;
    });
    total += weight[u];
  }
  const double two_w = total;
  const double w = total / 2.0;
  for (std::size_t u = 0; u < m; ++u) weight[u] /= two_w;

  auto distance = [&](std::size_t a, std::size_t b, double w_ab) {
    return weight[a] * weight[b] / (w * w_ab);
  };

  std::vector<char> active(ids, 0);
  std::fill(active.begin(), active.begin() + m, 1);
  std::vector<RawMerge> raw;
  raw.reserve(m - 1);
  std::vector<std::size_t> chain;
  std::size_t scan = 0;

  while (raw.size() < m - 1) {
    if (chain.empty()) {
      while (!active[scan]) ++scan;
      chain.push_back(scan);
    }
    const std::size_t a = chain.back();
    const std::size_t prev = chain.size() >= 2 ? chain[chain.size() - 2] : ids;
    std::size_t best = ids;
    double best_d = 0.0;
    for (const auto& [c, w_ac] : nbr[a]) {
      const double dc = distance(a, c, w_ac);
      if (best == ids || dc < best_d || (dc == best_d && c < best)) {
        best = c;
        best_d = dc;
      }
    }
    if (prev != ids) {
      const auto it = nbr[a].find(prev);
      if (it != nbr[a].end() && distance(a, prev, it->second) <= best_d) {
        best = prev;
        best_d = distance(a, prev, it->second);
      }
    }
    if (best != prev) {
      chain.push_back(best);
      continue;
    }

    chain.pop_back();
    chain.pop_back();
    const std::size_t b = prev;
    const std::size_t c = m + raw.size();
    raw.push_back({a, b, best_d, size[a] + size[b]});
    weight[c] = weight[a] + weight[b];
    size[c] = size[a] + size[b];
    active[a] = active[b] = 0;
    active[c] = 1;
    for (std::size_t side : {a, b}) {
      for (const auto& [x, w_x] : nbr[side]) {
        if (x == a || x == b) continue;
        nbr[c][x] += w_x;
        nbr[x].erase(side);
      }
      nbr[side].clear();
    }
    for (const auto& [x, w_x] : nbr[c]) nbr[x][c] = w_x;
  }
  result.dendrogram.merges = sorted_merges(raw, m);
  return result;
}

Partition cut_straight(const Dendrogram& d, std::size_t n_clusters) {
  validate_dendrogram(d);
  const std::size_t n = d.n_leaves;
  if (n_clusters < 1 || n_clusters > n) {
    throw ParameterError("n_clusters must lie in [1, " + std::to_string(n) +
                         "], got " + std::to_string(n_clusters));
  }
  std::vector<std::size_t> parent(n + d.merges.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t t = 0; t < n - n_clusters; ++t) {
    parent[d.merges[t].a] = n + t;
    parent[d.merges[t].b] = n + t;
  }
  std::vector<std::int64_t> roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = i;
    while (parent[r] != r) r = parent[r];
    roots[i] = static_cast<std::int64_t>(r);
  }
  return Partition::compact(roots);
}

CompressedDendrogram compress(const Dendrogram& d, std::size_t min_size) {
  validate_dendrogram(d);
  const std::size_t n = d.n_leaves;
  if (min_size < 1 || min_size >= n) {
    throw ParameterError("min_size must lie in [1, " + std::to_string(n) +
                         "), got " + std::to_string(min_size));
  }

  // Roots of collapsed subtrees: children of surviving merges that are leaves
  // or merges below min_size.
  std::vector<std::size_t> collapsed;
  std::vector<std::size_t> surviving;
  for (std::size_t t = 0; t < d.merges.size(); ++t) {
    if (d.merges[t].size < min_size) continue;
    surviving.push_back(t);
    for (std::size_t child : {d.merges[t].a, d.merges[t].b}) {
      if (child < n || cluster_size(d, child) < min_size) collapsed.push_back(child);
    }
  }

  CompressedDendrogram out;
  std::vector<std::pair<std::size_t, std::size_t>> order;  // (min leaf, root)
  std::vector<std::vector<std::size_t>> members(collapsed.size());
  for (std::size_t k = 0; k < collapsed.size(); ++k) {
    std::vector<std::size_t> stack{collapsed[k]};
    while (!stack.empty()) {
      const std::size_t id = stack.back();
      stack.pop_back();
      if (id < n) {
        members[k].push_back(id);
      } else {
        stack.push_back(d.merges[id - n].a);
        stack.push_back(d.merges[id - n].b);
      }
    }
    std::sort(members[k].begin(), members[k].end());
    order.push_back({members[k].front(), k});
  }
  std::sort(order.begin(), order.end());

  const std::size_t leaves = collapsed.size();
  std::unordered_map<std::size_t, std::size_t> new_id;
  for (std::size_t pos = 0; pos < leaves; ++pos) {
    const std::size_t k = order[pos].second;
    new_id[collapsed[k]] = pos;
    out.groups.push_back(std::move(members[k]));
  }
  out.dendrogram.n_leaves = leaves;
  for (std::size_t s = 0; s < surviving.size(); ++s) {
    const Merge& mg = d.merges[surviving[s]];
    const std::size_t a = new_id.at(mg.a);
    const std::size_t b = new_id.at(mg.b);
    const std::size_t sa = a < leaves ? 1 : out.dendrogram.merges[a - leaves].size;
    const std::size_t sb = b < leaves ? 1 : out.dendrogram.merges[b - leaves].size;
    out.dendrogram.merges.push_back({std::min(a, b), std::max(a, b), mg.height, sa + sb});
    new_id[n + surviving[s]] = leaves + s;
  }
  return out;
}

void write_dendrogram(std::ostream& out, const Dendrogram& d) {
  for (const Merge& mg : d.merges) {
    out << mg.a << '\t' << mg.b << '\t' << format_double(mg.height) << '\t'
        << mg.size << '\n';
  }
}

Dendrogram read_dendrogram(std::istream& in) {
  Dendrogram d;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    while (!view.empty() && (view.back() == '\r' || view.back() == ' ' ||
                             view.back() == '\t')) {
      view.remove_suffix(1);
    }
    if (view.empty() || view.front() == '#' || view.front() == '%') continue;
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos <= view.size()) {
      const std::size_t end = std::min(view.find('\t', pos), view.size());
      fields.push_back(view.substr(pos, end - pos));
      pos = end + 1;
    }
    if (fields.size() != 4) {
      throw ParseError("expected 4 tab-separated fields, found " +
                           std::to_string(fields.size()), line_no);
    }
    Merge mg;
    auto parse_count = [&](std::string_view f, std::size_t& v) {
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || p != f.data() + f.size()) {
        throw ParseError("invalid integer '" + std::string(f) + "'", line_no);
      }
    };
    parse_count(fields[0], mg.a);
    parse_count(fields[1], mg.b);
    parse_count(fields[3], mg.size);
    auto [p, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(),
                                   mg.height);
    if (ec != std::errc() || p != fields[2].data() + fields[2].size()) {
      throw ParseError("invalid height '" + std::string(fields[2]) + "'", line_no);
    }
    d.merges.push_back(mg);
  }
  d.n_leaves = d.merges.empty() ? 0 : d.merges.size() + 1;
  if (!d.merges.empty()) validate_dendrogram(d);
  return d;
}

}  // namespace sknet
