// Dense brute-force reference implementations used by the tests. They share no
// code with the library beyond reading the CSR arrays.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "sknet/csr.hpp"
#include "sknet/graph.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline MatrixXd dense(const sknet::CsrMatrix& m) {
  MatrixXd d = MatrixXd::Zero(static_cast<Eigen::Index>(m.n_rows()),
                              static_cast<Eigen::Index>(m.n_cols()));
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    for (std::size_t k = m.row_begin(i); k < m.row_end(i); ++k) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m.col(k))) += m.weight(k);
    }
  }
  return d;
}

inline MatrixXd dense(const sknet::Graph& g) { return dense(g.adjacency()); }

inline MatrixXd undirected(const sknet::Graph& g) {
  const MatrixXd a = dense(g);
  return g.directed() ? MatrixXd(a + a.transpose()) : a;
}

// Seeded random graph; undirected graphs may contain self-loops.
struct RandomGraphSpec {
  std::size_t n = 10;
  double density = 0.2;
  bool directed = false;
  bool weighted = false;
  bool self_loops = false;
  // Weights uniform in [0.5, 1.5) instead of multiples of 0.5.
  bool continuous = false;
};

inline sknet::Graph random_graph(const RandomGraphSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<sknet::Edge> edges;
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = spec.directed ? 0 : i; j < spec.n; ++j) {
      if (i == j && !spec.self_loops) continue;
      if (unif(rng) >= spec.density) continue;
      double w = 1.0;
      if (spec.continuous) w = 0.5 + unif(rng);
      else if (spec.weighted) w = std::round(1.0 + 9.0 * unif(rng)) / 2.0;
      edges.push_back({i, j, w});
    }
  }
  return sknet::Graph::from_edges(edges, spec.n, spec.directed);
}

// Exact PageRank fixed point x = d (P^T x + (dangling . x) r) + (1 - d) r via
// a dense linear solve.
inline VectorXd pagerank_fixed_point(const MatrixXd& a, double d, const VectorXd& r) {
  const auto n = a.rows();
  MatrixXd m = MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double out = a.row(i).sum();
    for (Eigen::Index j = 0; j < n; ++j) {
      // Column i of the transition operator.
      const double p = out > 0.0 ? a(i, j) / out : r(j);
      m(j, i) -= d * p;
    }
  }
  return m.partialPivLu().solve((1.0 - d) * r);
}

// Limit of HITS from h = 1: authorities along the projection of A^T 1 on the
// top eigenspace of A^T A. Returns false when the spectral gap makes
// `iterations` steps too few to reach that limit within `tol`.
inline bool hits_limit(const MatrixXd& a, std::size_t iterations, double tol,
                       VectorXd& hubs, VectorXd& auths) {
  const MatrixXd ata = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(ata);
  const VectorXd& vals = eig.eigenvalues();
  const MatrixXd& vecs = eig.eigenvectors();
  const auto n = vals.size();
  const double top = vals(n - 1);
  if (top <= 0.0) return false;
  VectorXd start = a.transpose() * VectorXd::Ones(a.rows());
  VectorXd proj = VectorXd::Zero(n);
  double second = 0.0;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (vals(k) >= top * (1.0 - 1e-12)) {
      proj += vecs.col(k) * vecs.col(k).dot(start);
    } else {
      second = std::max(second, vals(k));
    }
  }
  if (proj.norm() < 1e-6 * start.norm()) return false;
  const double rate = std::pow(second / top, static_cast<double>(iterations));
  if (rate * start.norm() / proj.norm() > tol * 1e-2) return false;
  auths = proj / proj.norm();
  hubs = a * auths;
  hubs /= hubs.norm();
  return true;
}

// Plain dense power iteration of the HITS recurrence.
inline void hits_power(const MatrixXd& a, std::size_t iterations, VectorXd& hubs,
                       VectorXd& auths) {
  hubs = VectorXd::Ones(a.rows());
  for (std::size_t t = 0; t < iterations; ++t) {
    auths = a.transpose() * hubs;
    auths /= auths.norm();
    hubs = a * auths;
    hubs /= hubs.norm();
  }
}

inline VectorXd katz(const MatrixXd& a, double alpha, std::size_t depth) {
  const auto n = a.rows();
  VectorXd total = VectorXd::Zero(n);
  MatrixXd power = MatrixXd::Identity(n, n);
  for (std::size_t t = 1; t <= depth; ++t) {
    power = power * a;
    total += std::pow(alpha, static_cast<double>(t)) * power.transpose() * VectorXd::Ones(n);
  }
  return total;
}

// All-pairs shortest paths. hops=true ignores weights.
inline MatrixXd floyd_warshall(const MatrixXd& a, bool hops) {
  const auto n = a.rows();
  MatrixXd d = MatrixXd::Constant(n, n, kInf);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && a(i, j) > 0.0) d(i, j) = std::min(d(i, j), hops ? 1.0 : a(i, j));
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
      }
    }
  }
  return d;
}

inline VectorXd harmonic(const MatrixXd& a) {
  const MatrixXd d = floyd_warshall(a, true);
  VectorXd h = VectorXd::Zero(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
      if (i != j && std::isfinite(d(i, j))) h(i) += 1.0 / d(i, j);
    }
  }
  return h;
}

// Boolean reachability including i -> i.
inline std::vector<std::vector<bool>> reachability(const MatrixXd& a) {
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    r[i][i] = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0.0) r[i][j] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

// Pairs (i, j) in the same class, as a canonical set of class member lists.
inline std::set<std::vector<std::size_t>> classes(const std::vector<std::int64_t>& labels) {
  std::map<std::int64_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  std::set<std::vector<std::size_t>> out;
  for (auto& [l, members] : groups) out.insert(members);
  return out;
}

inline std::set<std::vector<std::size_t>> weak_components(const MatrixXd& a) {
  const MatrixXd sym = a + a.transpose();
  const auto r = reachability(sym);
  std::vector<std::int64_t> labels(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::size_t first = i;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[i][j]) {
        first = j;
        break;
      }
    }
    labels[i] = static_cast<std::int64_t>(first);
  }
  return classes(labels);
}

inline std::set<std::vector<std::size_t>> strong_components(const MatrixXd& a) {
  const auto r = reachability(a);
  std::vector<std::int64_t> labels(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::size_t first = i;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[i][j] && r[j][i]) {
        first = j;
        break;
      }
    }
    labels[i] = static_cast<std::int64_t>(first);
  }
  return classes(labels);
}

// Q = 1/(2w) sum_ij [A_ij - r d_i d_j / (2w)] delta(c_i, c_j) on a symmetric A.
inline double modularity(const MatrixXd& a, const std::vector<std::int64_t>& labels,
                         double resolution = 1.0) {
  const double two_w = a.sum();
  if (two_w == 0.0) return 0.0;
  const VectorXd d = a.rowwise().sum();
  double q = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
      if (labels[static_cast<std::size_t>(i)] != labels[static_cast<std::size_t>(j)]) continue;
      q += a(i, j) - resolution * d(i) * d(j) / two_w;
    }
  }
  return q / two_w;
}

// Calls f on every set partition of {0..n-1} in restricted-growth form.
inline void for_each_partition(std::size_t n,
                               const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> labels(n, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t max_label) {
    if (i == n) {
      f(labels);
      return;
    }
    for (std::int64_t l = 0; l <= max_label + 1; ++l) {
      labels[i] = l;
      rec(i + 1, std::max(max_label, l));
    }
  };
  if (n == 0) {
    f(labels);
    return;
  }
  labels[0] = 0;
  rec(1, 0);
}

inline double best_modularity(const MatrixXd& a) {
  double best = -1.0;
  for_each_partition(static_cast<std::size_t>(a.rows()),
                     [&](const std::vector<std::int64_t>& l) { best = std::max(best, modularity(a, l)); });
  return best;
}

// Eigenvalues (descending) of D^-1/2 (A + g/n 11^T) D^-1/2.
inline VectorXd normalized_spectrum(const MatrixXd& a, double gamma = 0.0) {
  const auto n = a.rows();
  const MatrixXd ag = a + MatrixXd::Constant(n, n, gamma / static_cast<double>(n));
  const VectorXd d = ag.rowwise().sum();
  const VectorXd s = d.cwiseSqrt().cwiseInverse();
  const MatrixXd norm = s.asDiagonal() * ag * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(norm);
  return eig.eigenvalues().reverse();
}

inline VectorXd singular_values(const MatrixXd& m) {
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return svd.singularValues();
}

inline MatrixXd degree_normalized(const MatrixXd& b) {
  const VectorXd r = b.rowwise().sum().cwiseSqrt().cwiseInverse();
  const VectorXd c = b.colwise().sum().transpose().cwiseSqrt().cwiseInverse();
  return r.asDiagonal() * b * c.asDiagonal();
}

// Paris-style linkage on a symmetric matrix by exhaustive pair search; returns
// the merged pairs as sets of original nodes in merge order.
inline std::vector<std::pair<std::set<std::size_t>, std::set<std::size_t>>> brute_linkage(
    const MatrixXd& a) {
  const auto n = static_cast<std::size_t>(a.rows());
  const double two_w = a.sum();
  const double w = two_w / 2.0;
  const VectorXd deg = a.rowwise().sum();
  std::vector<std::set<std::size_t>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({i});
  auto weight = [&](const std::set<std::size_t>& c) {
    double s = 0.0;
    for (auto i : c) s += deg(static_cast<Eigen::Index>(i));
    return s / two_w;
  };
  auto link = [&](const std::set<std::size_t>& x, const std::set<std::size_t>& y) {
    double s = 0.0;
    for (auto i : x)
      for (auto j : y) s += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return s;
  };
  std::vector<std::pair<std::set<std::size_t>, std::set<std::size_t>>> merges;
  while (clusters.size() > 1) {
    double best = kInf;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double l = link(clusters[i], clusters[j]);
        if (l <= 0.0) continue;
        const double d = weight(clusters[i]) * weight(clusters[j]) / (w * l);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (!std::isfinite(best)) break;
    merges.push_back({clusters[bi], clusters[bj]});
    std::set<std::size_t> merged = clusters[bi];
    merged.insert(clusters[bj].begin(), clusters[bj].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    clusters[bi] = merged;
  }
  return merges;
}

}  // namespace oracle
