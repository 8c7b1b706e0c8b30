#include "sknet/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sknet/connectivity.hpp"
#include "sknet/error.hpp"

namespace sknet {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::span<const double> as_span(const VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
std::span<double> as_span(VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

void apply(const LinearOperator& op, const VectorXd& x, VectorXd& y) {
  y.resize(static_cast<Eigen::Index>(op.rows()));
  op.apply(as_span(x), as_span(y));
}

VectorXd random_vector(std::size_t n, std::mt19937_64& rng) {
  VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  }
  return v;
}

// Largest-magnitude entry positive; the first such entry wins ties.
template <typename Vec>
bool needs_flip(const Vec& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  return v.size() > 0 && v[best] < 0.0;
}

// Orthogonalizes w against the first k columns of v twice.
void orthogonalize(const MatrixXd& v, Eigen::Index k, VectorXd& w, VectorXd* coeffs) {
  VectorXd h = v.leftCols(k).transpose() * w;
  w.noalias() -= v.leftCols(k) * h;
  const VectorXd h2 = v.leftCols(k).transpose() * w;
  w.noalias() -= v.leftCols(k) * h2;
  if (coeffs) *coeffs = h + h2;
}

CsrMatrix submatrix(const CsrMatrix& a, const std::vector<std::size_t>& nodes,
                    const std::vector<std::size_t>& local) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    a.for_each_in_row(nodes[u], [&](std::uint64_t j, double w) {
      edges.push_back({u, local[j], w});
    });
  }
  return CsrMatrix::from_edges(edges, nodes.size(), nodes.size());
}

MatrixXd orthonormal_basis(const MatrixXd& y) {
  Eigen::HouseholderQR<MatrixXd> qr(y);
  return qr.householderQ() * MatrixXd::Identity(y.rows(), y.cols());
}

MatrixXd multiply(const CsrMatrix& m, const MatrixXd& x) {
  MatrixXd y(static_cast<Eigen::Index>(m.n_rows()), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    matvec(m, std::span<const double>(x.col(c).data(), static_cast<std::size_t>(x.rows())),
           std::span<double>(y.col(c).data(), static_cast<std::size_t>(y.rows())));
  }
  return y;
}

}  // namespace

NormalizedAdjacencyOperator::NormalizedAdjacencyOperator(const CsrMatrix& adjacency,
                                                         double gamma)
    : a_(&adjacency), gamma_(gamma) {
  if (adjacency.n_rows() != adjacency.n_cols()) {
    throw DimensionError("normalized adjacency needs a square matrix");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("gamma must be finite and >= 0");
  }
  const std::vector<double> d = degrees(adjacency, Axis::kRows);
  inv_sqrt_.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double di = d[i] + gamma;
    if (!(di > 0.0)) {
      throw DegenerateInputError("node " + std::to_string(i) +
                                 " has zero degree; set gamma > 0 to regularize");
    }
    inv_sqrt_[i] = 1.0 / std::sqrt(di);
  }
  scratch_.resize(d.size());
}

void NormalizedAdjacencyOperator::apply(std::span<const double> x,
                                        std::span<double> y) const {
  const std::size_t n = inv_sqrt_.size();
  for (std::size_t i = 0; i < n; ++i) scratch_[i] = x[i] * inv_sqrt_[i];
  RegularizedOperator(*a_, gamma_).apply(scratch_, y);
  for (std::size_t i = 0; i < n; ++i) y[i] *= inv_sqrt_[i];
}

EigenPairs lanczos_largest(const LinearOperator& op, std::size_t nev,
                           const LanczosOptions& options) {
  const std::size_t n = op.rows();
  if (op.cols() != n) throw DimensionError("Lanczos needs a square operator");
  if (nev < 1 || nev > n) {
    throw ParameterError("requested " + std::to_string(nev) +
                         " eigenpairs of a " + std::to_string(n) + "-dimensional operator");
  }
  if (!(options.tol > 0.0)) throw ParameterError("tol must be > 0");
  std::size_t ncv = options.subspace ? options.subspace : std::max(2 * nev + 1, nev + 16);
  ncv = std::min(std::max(ncv, nev + 1), n);
  const auto m = static_cast<Eigen::Index>(n);
  const auto p_max = static_cast<Eigen::Index>(ncv);
  const auto want = static_cast<Eigen::Index>(nev);
  const double inner_tol = 0.1 * options.tol;

  std::mt19937_64 rng(options.seed);
  MatrixXd v(m, p_max);
  MatrixXd h = MatrixXd::Zero(p_max, p_max);
  VectorXd start = random_vector(n, rng);
  v.col(0) = start / start.norm();
  Eigen::Index kept = 0;
  VectorXd w, f, coeffs;
  double scale = 0.0;
  EigenPairs out;

  for (std::size_t restart = 0;; ++restart) {
    Eigen::Index p = p_max;
    bool exhausted = false;
    for (Eigen::Index j = kept; j < p_max; ++j) {
      VectorXd vj = v.col(j);
      apply(op, vj, w);
      orthogonalize(v, j + 1, w, &coeffs);
      h.col(j).head(j + 1) = coeffs;
      h.row(j).head(j + 1) = coeffs.transpose();
      const double beta = w.norm();
      scale = std::max({scale, std::abs(coeffs[j]), beta});
      if (j + 1 == p_max) {
        f = w;
        break;
      }
      if (beta > 1e-10 * scale) {
        v.col(j + 1) = w / beta;
        continue;
      }
      // Invariant subspace found: continue from a fresh direction.
      if (j + 1 >= m) {
        exhausted = true;
      } else {
        VectorXd r = random_vector(n, rng);
        const double before = r.norm();
        orthogonalize(v, j + 1, r, nullptr);
        if (r.norm() <= 1e-8 * before) exhausted = true;
        else v.col(j + 1) = r / r.norm();
      }
      if (exhausted) {
        p = j + 1;
        f = VectorXd::Zero(m);
        break;
      }
    }

    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(h.topLeftCorner(p, p));
    // Ascending from Eigen; reverse for descending order.
    const VectorXd theta = eig.eigenvalues().reverse();
    const MatrixXd s = eig.eigenvectors().rowwise().reverse();
    const double f_norm = f.norm();
    const Eigen::Index usable = std::min(want, p);
    bool converged = usable == want;
    for (Eigen::Index i = 0; i < usable && converged; ++i) {
      if (f_norm * std::abs(s(p - 1, i)) > inner_tol) converged = false;
    }

    if (converged || exhausted || restart >= options.max_restarts) {
      const MatrixXd y = v.leftCols(p) * s.leftCols(usable);
      out.values.clear();
      out.residuals.clear();
      out.vectors = y;
      out.restarts = restart;
      bool ok = usable == want;
      VectorXd ay;
      for (Eigen::Index i = 0; i < usable; ++i) {
        VectorXd yi = y.col(i);
        apply(op, yi, ay);
        const double res = (ay - theta[i] * yi).norm();
        out.values.push_back(theta[i]);
        out.residuals.push_back(res);
        if (!(res <= options.tol)) ok = false;
      }
      if (ok) break;
      if (exhausted || restart >= options.max_restarts) {
        throw ConvergenceError("Lanczos did not reach tolerance " +
                                   std::to_string(options.tol) + " after " +
                                   std::to_string(restart) + " restarts",
                               out.residuals);
      }
    }

    // Thick restart: keep the leading Ritz vectors and the residual direction.
    const Eigen::Index keep = std::min(p - 1, std::max(want, want + (p - want) / 2));
    const MatrixXd ritz = v.leftCols(p) * s.leftCols(keep);
    v.leftCols(keep) = ritz;
    h.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) h(i, i) = theta[i];
    if (f_norm > 1e-10 * scale) {
      VectorXd next = f / f_norm;
      orthogonalize(v, keep, next, nullptr);
      v.col(keep) = next / next.norm();
    } else {
      VectorXd r = random_vector(n, rng);
      orthogonalize(v, keep, r, nullptr);
      v.col(keep) = r / r.norm();
    }
    kept = keep;
  }

  for (Eigen::Index i = 0; i < out.vectors.cols(); ++i) {
    if (needs_flip(out.vectors.col(i))) out.vectors.col(i) *= -1.0;
  }
  return out;
}

EigenPairs normalized_eigenpairs(const Graph& g, std::size_t k,
                                 const SpectralParams& params) {
  const CsrMatrix a = undirected_adjacency(g);
  const std::size_t n = a.n_rows();
  if (k < 1 || k > n) {
    throw ParameterError("requested " + std::to_string(k) + " eigenpairs for " +
                         std::to_string(n) + " nodes");
  }
  const NormalizedAdjacencyOperator full_op(a, params.gamma);
  LanczosOptions opts;
  opts.tol = params.tol;
  opts.max_restarts = params.max_restarts;
  opts.seed = params.seed;

  const Partition comps = params.gamma > 0.0 ? Partition{std::vector<std::int64_t>(n, 0), 1}
                                              : connected_components(Graph(a, false));
  if (comps.n_clusters == 1) return lanczos_largest(full_op, k, opts);

  struct Candidate {
    double value;
    std::size_t comp;
    Eigen::Index index;
  };
  std::vector<std::vector<std::size_t>> members(comps.n_clusters);
  for (std::size_t i = 0; i < n; ++i) members[comps.labels[i]].push_back(i);
  std::vector<std::size_t> local(n);
  std::vector<EigenPairs> parts(comps.n_clusters);
  std::vector<Candidate> candidates;
  for (std::size_t c = 0; c < comps.n_clusters; ++c) {
    for (std::size_t u = 0; u < members[c].size(); ++u) local[members[c][u]] = u;
    const CsrMatrix sub = submatrix(a, members[c], local);
    const NormalizedAdjacencyOperator op(sub, 0.0);
    parts[c] = lanczos_largest(op, std::min(k, members[c].size()), opts);
    for (std::size_t i = 0; i < parts[c].values.size(); ++i) {
      candidates.push_back({parts[c].values[i], c, static_cast<Eigen::Index>(i)});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.value > y.value; });

  EigenPairs out;
  out.vectors = MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (std::size_t t = 0; t < k; ++t) {
    const Candidate& cand = candidates[t];
    out.values.push_back(cand.value);
    const auto& nodes = members[cand.comp];
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      out.vectors(static_cast<Eigen::Index>(nodes[u]), static_cast<Eigen::Index>(t)) =
          parts[cand.comp].vectors(static_cast<Eigen::Index>(u), cand.index);
    }
    out.restarts = std::max(out.restarts, parts[cand.comp].restarts);
  }

  // One eigenvalue 1 per component; when all are present, rotate them so the
  // first is the global trivial vector.
  std::size_t ones = 0;
  while (ones < k && std::abs(out.values[ones] - 1.0) <= 1e-8) ++ones;
  if (ones == comps.n_clusters) {
    const auto r = static_cast<Eigen::Index>(ones);
    MatrixXd basis(out.vectors.rows(), r + 1);
    const std::vector<double>& inv = full_op.inv_sqrt_degrees();
    for (std::size_t i = 0; i < n; ++i) {
      basis(static_cast<Eigen::Index>(i), 0) = 1.0 / inv[i];
    }
    basis.rightCols(r) = out.vectors.leftCols(r);
    Eigen::Index filled = 0;
    for (Eigen::Index c = 0; c <= r && filled < r; ++c) {
      VectorXd col = basis.col(c);
      const double before = col.norm();
      orthogonalize(out.vectors, filled, col, nullptr);
      if (col.norm() <= 1e-8 * before) continue;
      out.vectors.col(filled++) = col / col.norm();
    }
  }

  VectorXd y;
  for (Eigen::Index t = 0; t < out.vectors.cols(); ++t) {
    if (needs_flip(out.vectors.col(t))) out.vectors.col(t) *= -1.0;
    VectorXd x = out.vectors.col(t);
    apply(full_op, x, y);
    out.residuals.push_back((y - out.values[static_cast<std::size_t>(t)] * x).norm());
  }
  return out;
}

EmbeddingMatrix spectral_embedding(const Graph& g, const SpectralParams& params) {
  if (params.dim < 1) throw ParameterError("dim must be >= 1");
  if (params.dim + 1 > g.n_nodes()) {
    throw ParameterError("dim must be smaller than the number of nodes (" +
                         std::to_string(g.n_nodes()) + ")");
  }
  const EigenPairs pairs = normalized_eigenpairs(g, params.dim + 1, params);
  const CsrMatrix a = undirected_adjacency(g);
  const NormalizedAdjacencyOperator op(a, params.gamma);
  const std::vector<double>& inv = op.inv_sqrt_degrees();

  EmbeddingMatrix e;
  const auto n = static_cast<Eigen::Index>(g.n_nodes());
  const auto dim = static_cast<Eigen::Index>(params.dim);
  e.coords.resize(n, dim);
  for (Eigen::Index t = 0; t < dim; ++t) {
    for (Eigen::Index i = 0; i < n; ++i) {
      e.coords(i, t) = pairs.vectors(i, t + 1) * inv[static_cast<std::size_t>(i)];
    }
    const double norm = e.coords.col(t).norm();
    if (norm > 0.0) e.coords.col(t) /= norm;
    if (needs_flip(e.coords.col(t))) e.coords.col(t) *= -1.0;
    e.spectrum.push_back(1.0 - pairs.values[static_cast<std::size_t>(t + 1)]);
    e.residuals.push_back(pairs.residuals[static_cast<std::size_t>(t + 1)]);
  }
  return e;
}

SvdResult truncated_svd(const CsrMatrix& m, std::size_t k, const SvdParams& params) {
  const std::size_t limit = std::min(m.n_rows(), m.n_cols());
  if (k < 1 || k > limit) {
    throw ParameterError("k must lie in [1, " + std::to_string(limit) + "], got " +
                         std::to_string(k));
  }
  if (!(params.tol > 0.0)) throw ParameterError("tol must be > 0");
  const auto l = static_cast<Eigen::Index>(std::min(k + params.oversampling, limit));
  const auto kk = static_cast<Eigen::Index>(k);
  const CsrMatrix mt = transpose(m);

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal;
  MatrixXd omega(static_cast<Eigen::Index>(m.n_cols()), l);
  for (Eigen::Index c = 0; c < l; ++c) {
    for (Eigen::Index r = 0; r < omega.rows(); ++r) omega(r, c) = normal(rng);
  }
  MatrixXd q = orthonormal_basis(multiply(m, omega));
  auto power_step = [&] {
    const MatrixXd z = orthonormal_basis(multiply(mt, q));
    q = orthonormal_basis(multiply(m, z));
  };
  for (std::size_t it = 0; it < params.power_iterations; ++it) power_step();

  SvdResult out;
  for (std::size_t it = params.power_iterations;; ++it) {
    // M^T Q = V_b S U_b^T, so M ~ Q Q^T M = (Q U_b) S V_b^T.
    const MatrixXd c = multiply(mt, q);
    Eigen::BDCSVD<MatrixXd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.v = svd.matrixU().leftCols(kk);
    out.u = q * svd.matrixV().leftCols(kk);
    const VectorXd& sv = svd.singularValues();
    out.s.assign(sv.data(), sv.data() + kk);
    const MatrixXd mv = multiply(m, out.v);
    out.residuals.clear();
    bool ok = true;
    const double bound = params.tol * out.s[0];
    for (Eigen::Index i = 0; i < kk; ++i) {
      const double res = (mv.col(i) - out.s[static_cast<std::size_t>(i)] * out.u.col(i)).norm();
      out.residuals.push_back(res);
      if (!(res <= bound)) ok = false;
    }
    if (ok) break;
    if (it >= params.max_power_iterations) {
      throw ConvergenceError("randomized SVD did not reach tolerance after " +
                                 std::to_string(it) + " power iterations",
                             out.residuals);
    }
    power_step();
  }
  for (Eigen::Index i = 0; i < kk; ++i) {
    if (needs_flip(out.u.col(i))) {
      out.u.col(i) *= -1.0;
      out.v.col(i) *= -1.0;
    }
  }
  return out;
}

SvdResult truncated_svd(const CsrMatrix& m, std::size_t k, std::uint64_t seed) {
  SvdParams p;
  p.seed = seed;
  return truncated_svd(m, k, p);
}

SvdResult gsvd(const CsrMatrix& b, std::size_t k, const SvdParams& params) {
  std::vector<double> dr = degrees(b, Axis::kRows);
  std::vector<double> dc = degrees(b, Axis::kCols);
  for (std::size_t i = 0; i < dr.size(); ++i) {
    if (!(dr[i] > 0.0)) throw DegenerateInputError("row " + std::to_string(i) + " is empty");
    dr[i] = 1.0 / std::sqrt(dr[i]);
  }
  for (std::size_t j = 0; j < dc.size(); ++j) {
    if (!(dc[j] > 0.0)) {
      throw DegenerateInputError("column " + std::to_string(j) + " is empty");
    }
    dc[j] = 1.0 / std::sqrt(dc[j]);
  }
  SvdResult out = truncated_svd(scale(b, dr, dc), k, params);
  for (Eigen::Index i = 0; i < out.u.rows(); ++i) out.u.row(i) *= dr[static_cast<std::size_t>(i)];
  for (Eigen::Index j = 0; j < out.v.rows(); ++j) out.v.row(j) *= dc[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 0; i < out.u.cols(); ++i) {
    if (needs_flip(out.u.col(i))) {
      out.u.col(i) *= -1.0;
      out.v.col(i) *= -1.0;
    }
  }
  return out;
}

SvdResult gsvd(const CsrMatrix& b, std::size_t k, std::uint64_t seed) {
  SvdParams p;
  p.seed = seed;
  return gsvd(b, k, p);
}

}  // namespace sknet
