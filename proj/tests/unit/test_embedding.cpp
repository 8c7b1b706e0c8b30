#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "sknet/datasets.hpp"
#include "sknet/embedding.hpp"
#include "sknet/error.hpp"
#include "sknet/generators.hpp"

using namespace sknet;

namespace {

Graph two_components() {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {5, 6}, {6, 3}, {3, 5}};
  return Graph::from_edges(e, 7, false);
}

CsrMatrix random_sparse(std::size_t r, std::size_t c, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (u(rng) < density) edges.push_back({i, j, u(rng)});
  return CsrMatrix::from_edges(edges, r, c);
}

}  // namespace

TEST(Lanczos, MatchesDenseOnSymmetricOperator) {
  const Graph g = karate_club();
  const NormalizedAdjacencyOperator op(g.adjacency(), 0.0);
  const EigenPairs pairs = lanczos_largest(op, 8);
  const Eigen::VectorXd ref = oracle::normalized_spectrum(oracle::dense(g));
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(pairs.values[i], ref[static_cast<Eigen::Index>(i)], 1e-10);
    EXPECT_LE(pairs.residuals[i], 1e-6);
  }
  EXPECT_NEAR(pairs.values[0], 1.0, 1e-12);
}

TEST(Lanczos, SmallOperatorIsExhaustedExactly) {
  const Graph g = Graph::from_edges(std::vector<Edge>{{0, 1}, {1, 2}}, 3, false);
  const NormalizedAdjacencyOperator op(g.adjacency(), 0.0);
  const EigenPairs pairs = lanczos_largest(op, 3);
  EXPECT_NEAR(pairs.values[0], 1.0, 1e-12);
  EXPECT_NEAR(pairs.values[1], 0.0, 1e-12);
  EXPECT_NEAR(pairs.values[2], -1.0, 1e-12);
  EXPECT_THROW(lanczos_largest(op, 4), ParameterError);
}

TEST(Lanczos, ReportsNonConvergence) {
  const SbmParams params = SbmParams::planted({300, 300}, 0.05, 0.01, 3);
  const Graph g = generate_sbm(params);
  const NormalizedAdjacencyOperator op(g.adjacency(), 1.0);
  LanczosOptions opts;
  opts.max_restarts = 0;
  opts.tol = 1e-14;
  opts.subspace = 12;
  try {
    lanczos_largest(op, 10, opts);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.residuals().size(), 10u);
  }
}

TEST(Spectral, TopPairIsSqrtDegree) {
  const Graph g = karate_club();
  const EigenPairs pairs = normalized_eigenpairs(g, 3);
  const auto d = degrees(g.adjacency());
  Eigen::VectorXd s(34);
  for (int i = 0; i < 34; ++i) s[i] = std::sqrt(d[static_cast<std::size_t>(i)]);
  s.normalize();
  EXPECT_NEAR(pairs.values[0], 1.0, 1e-12);
  EXPECT_NEAR(std::abs(pairs.vectors.col(0).dot(s)), 1.0, 1e-10);
}

TEST(Spectral, ComponentsGiveZeroEigenvalues) {
  const Graph g = two_components();
  const EigenPairs pairs = normalized_eigenpairs(g, 4);
  const Eigen::VectorXd ref = oracle::normalized_spectrum(oracle::dense(g));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(pairs.values[i], ref[static_cast<Eigen::Index>(i)], 1e-10);
    EXPECT_LE(pairs.residuals[i], 1e-6);
  }
  // First vector is the global sqrt-degree direction.
  const auto d = degrees(g.adjacency());
  Eigen::VectorXd s(7);
  for (int i = 0; i < 7; ++i) s[i] = std::sqrt(d[static_cast<std::size_t>(i)]);
  EXPECT_NEAR(std::abs(pairs.vectors.col(0).dot(s.normalized())), 1.0, 1e-10);
  const Eigen::MatrixXd gram = pairs.vectors.transpose() * pairs.vectors;
  EXPECT_TRUE(gram.isApprox(Eigen::MatrixXd::Identity(4, 4), 1e-10));

  SpectralParams p;
  p.dim = 3;
  const EmbeddingMatrix e = spectral_embedding(g, p);
  std::size_t zeros = 0;
  for (double l : e.spectrum) zeros += std::abs(l) <= 1e-8;
  EXPECT_EQ(zeros + 1, 2u);
}

TEST(Spectral, IsolatedNodesNeedRegularization) {
  const Graph g = Graph::from_edges(std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}}, 4, false);
  SpectralParams p;
  p.dim = 2;
  EXPECT_THROW(spectral_embedding(g, p), DegenerateInputError);
  p.gamma = 0.5;
  const EmbeddingMatrix e = spectral_embedding(g, p);
  const Eigen::VectorXd ref = oracle::normalized_spectrum(oracle::dense(g), 0.5);
  for (std::size_t t = 0; t < 2; ++t) {
    EXPECT_NEAR(e.spectrum[t], 1.0 - ref[static_cast<Eigen::Index>(t + 1)], 1e-10);
  }
}

TEST(Spectral, SbmSeparatesBlocksAndMatchesDense) {
  const SbmParams params = SbmParams::planted({15, 15}, 0.8, 0.05, 9);
  const Graph g = generate_sbm(params);
  SpectralParams p;
  p.dim = 4;
  const EmbeddingMatrix e = spectral_embedding(g, p);
  const Eigen::VectorXd ref = oracle::normalized_spectrum(oracle::dense(g));
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_NEAR(e.spectrum[t], 1.0 - ref[static_cast<Eigen::Index>(t + 1)], 1e-8);
    EXPECT_LE(e.residuals[t], 1e-6);
    EXPECT_NEAR(e.coords.col(static_cast<Eigen::Index>(t)).norm(), 1.0, 1e-12);
  }
  EXPECT_TRUE(std::is_sorted(e.spectrum.begin(), e.spectrum.end()));
  const auto blocks = sbm_blocks(params).labels;
  int agree = 0;
  for (int i = 0; i < 30; ++i) agree += (e.coords(i, 0) > 0) == (blocks[static_cast<std::size_t>(i)] == 0);
  EXPECT_TRUE(agree == 30 || agree == 0);
}

TEST(Spectral, RegularizationIsContinuous) {
  const Graph g = karate_club();
  SpectralParams a, b;
  a.dim = b.dim = 5;
  b.gamma = 1e-9;
  const auto ea = spectral_embedding(g, a);
  const auto eb = spectral_embedding(g, b);
  for (std::size_t t = 0; t < 5; ++t) EXPECT_NEAR(ea.spectrum[t], eb.spectrum[t], 1e-4);
}

TEST(Spectral, DeterministicAndSignConvention) {
  const Graph g = karate_club();
  const auto e1 = spectral_embedding(g);
  const auto e2 = spectral_embedding(g);
  EXPECT_EQ(e1.coords, e2.coords);
  EXPECT_EQ(e1.dim(), 16u);
  for (Eigen::Index t = 0; t < e1.coords.cols(); ++t) {
    Eigen::Index idx;
    e1.coords.col(t).cwiseAbs().maxCoeff(&idx);
    EXPECT_GT(e1.coords(idx, t), 0.0);
  }
  for (double l : e1.spectrum) {
    EXPECT_GE(l, -1e-9);
    EXPECT_LE(l, 2.0 + 1e-9);
  }
}

TEST(Spectral, ParameterErrors) {
  SpectralParams p;
  p.dim = 34;
  EXPECT_THROW(spectral_embedding(karate_club(), p), ParameterError);
  p.dim = 0;
  EXPECT_THROW(spectral_embedding(karate_club(), p), ParameterError);
}

TEST(Svd, RankOneAndDiagonal) {
  const std::vector<double> u = {1, 2, 0, 3}, v = {2, 1, 1};
  std::vector<Edge> e;
  for (std::uint64_t i = 0; i < 4; ++i)
    for (std::uint64_t j = 0; j < 3; ++j)
      if (u[i] * v[j] != 0) e.push_back({i, j, u[i] * v[j]});
  const SvdResult r = truncated_svd(CsrMatrix::from_edges(e, 4, 3), 1);
  EXPECT_NEAR(r.s[0], std::sqrt(14.0) * std::sqrt(6.0), 1e-9);

  const std::vector<Edge> d = {{0, 0, 3}, {1, 1, 2}, {2, 2, 1}};
  const SvdResult rd = truncated_svd(CsrMatrix::from_edges(d, 3, 3), 2);
  EXPECT_NEAR(rd.s[0], 3.0, 1e-12);
  EXPECT_NEAR(rd.s[1], 2.0, 1e-12);
  EXPECT_THROW(truncated_svd(CsrMatrix::from_edges(d, 3, 3), 4), ParameterError);
  EXPECT_THROW(truncated_svd(CsrMatrix::from_edges(d, 3, 3), 0), ParameterError);
}

TEST(Svd, MatchesDenseOnRandomSparse) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CsrMatrix m = random_sparse(40, 25, 0.2, seed);
    const SvdResult r = truncated_svd(m, 5, seed);
    const Eigen::VectorXd ref = oracle::singular_values(oracle::dense(m));
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_NEAR(r.s[i], ref[static_cast<Eigen::Index>(i)], 1e-8 * ref[0]);
      EXPECT_LE(r.residuals[i], 1e-6 * r.s[0]);
    }
    const Eigen::MatrixXd dense = oracle::dense(m);
    for (Eigen::Index i = 0; i < 5; ++i) {
      EXPECT_LE((dense * r.v.col(i) - r.s[static_cast<std::size_t>(i)] * r.u.col(i)).norm(),
                1e-6 * r.s[0]);
    }
  }
}

TEST(Svd, RowPermutationInvariance) {
  const CsrMatrix m = random_sparse(30, 20, 0.25, 42);
  std::vector<Edge> edges = m.to_edges();
  for (Edge& e : edges) e.row = 29 - e.row;
  const SvdResult a = truncated_svd(m, 4, 1);
  const SvdResult b = truncated_svd(CsrMatrix::from_edges(edges, 30, 20), 4, 1);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a.s[i], b.s[i], 1e-8);
}

TEST(Gsvd, AllOnesAndPermutation) {
  const std::vector<Edge> ones = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const SvdResult r = gsvd(CsrMatrix::from_edges(ones, 2, 2), 2);
  EXPECT_NEAR(r.s[0], 1.0, 1e-12);
  EXPECT_NEAR(r.s[1], 0.0, 1e-12);
  EXPECT_NEAR(r.u(0, 0), r.u(1, 0), 1e-12);
  EXPECT_NEAR(r.v(0, 0), r.v(1, 0), 1e-12);

  const std::vector<Edge> perm = {{0, 2}, {1, 0}, {2, 1}};
  const SvdResult p = gsvd(CsrMatrix::from_edges(perm, 3, 3), 3);
  for (double s : p.s) EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(Gsvd, BipartiteDemoMatchesDense) {
  const auto b = std::get<BipartiteGraph>(builtin("bipartite_demo"));
  const SvdResult r = gsvd(b.biadjacency(), 2);
  const Eigen::MatrixXd norm = oracle::degree_normalized(oracle::dense(b.biadjacency()));
  const Eigen::VectorXd ref = oracle::singular_values(norm);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(r.s[i], ref[static_cast<Eigen::Index>(i)], 1e-8);
  // Undo the degree scaling and check the singular triplets directly.
  const Eigen::VectorXd dr = oracle::dense(b.biadjacency()).rowwise().sum().cwiseSqrt();
  const Eigen::VectorXd dc = oracle::dense(b.biadjacency()).colwise().sum().transpose().cwiseSqrt();
  for (Eigen::Index i = 0; i < 2; ++i) {
    const Eigen::VectorXd u = dr.asDiagonal() * r.u.col(i);
    const Eigen::VectorXd v = dc.asDiagonal() * r.v.col(i);
    EXPECT_LE((norm * v - r.s[static_cast<std::size_t>(i)] * u).norm(), 1e-8);
  }
}

TEST(Gsvd, EmptyRowNamed) {
  const std::vector<Edge> e = {{0, 0}, {2, 1}};
  try {
    gsvd(CsrMatrix::from_edges(e, 3, 2), 1);
    FAIL();
  } catch (const DegenerateInputError& err) {
    EXPECT_NE(std::string(err.what()).find("row 1"), std::string::npos);
  }
  const std::vector<Edge> c = {{0, 0}, {1, 0}};
  EXPECT_THROW(gsvd(CsrMatrix::from_edges(c, 2, 2), 1), DegenerateInputError);
}
