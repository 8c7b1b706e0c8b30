#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sknet/clustering.hpp"
#include "sknet/datasets.hpp"
#include "sknet/error.hpp"
#include "sknet/generators.hpp"

using namespace sknet;

namespace {

Graph two_triangles() {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  return Graph::from_edges(e, 6, false);
}

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph::from_edges(e, n, false);
}

}  // namespace

TEST(Modularity, MatchesDoubleSumFormula) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    oracle::RandomGraphSpec spec;
    spec.n = 3 + seed;
    spec.weighted = true;
    spec.self_loops = seed % 2;
    spec.directed = seed % 3 == 0;
    const Graph g = oracle::random_graph(spec, seed);
    std::vector<std::int64_t> labels(spec.n);
    for (auto& l : labels) l = static_cast<std::int64_t>(rng() % 4);
    const Partition p = Partition::compact(labels);
    for (double r : {0.5, 1.0, 2.0}) {
      EXPECT_NEAR(modularity(g, p, r), oracle::modularity(oracle::undirected(g), p.labels, r),
                  1e-12);
    }
  }
}

TEST(Modularity, EdgeCasesAndErrors) {
  EXPECT_EQ(modularity(Graph(CsrMatrix(3, 3), false), Partition::singletons(3)), 0.0);
  EXPECT_NEAR(modularity(two_triangles(), Partition{{0, 0, 0, 1, 1, 1}, 2}), 0.5, 1e-15);
  EXPECT_THROW(modularity(two_triangles(), Partition::singletons(5)), DimensionError);
  EXPECT_THROW(modularity(two_triangles(), Partition{{0, 0, 0, 1, 1, -1}, 2}),
               ParameterError);
  EXPECT_THROW(modularity(two_triangles(), Partition::singletons(6), 0.0), ParameterError);
}

TEST(Louvain, KarateModularity) {
  const LouvainResult r = louvain_run(karate_club());
  EXPECT_GE(r.modularity, 0.40);
  EXPECT_NEAR(r.modularity,
              oracle::modularity(oracle::dense(karate_club()), r.partition.labels), 1e-12);
  EXPECT_GE(r.partition.n_clusters, 3u);
}

TEST(Louvain, ExactOptimumOnSmallGraphs) {
  for (const Graph& g : {two_triangles(), complete(5)}) {
    const double best = oracle::best_modularity(oracle::dense(g));
    EXPECT_NEAR(louvain_run(g).modularity, best, 1e-12);
  }
  EXPECT_EQ(louvain(two_triangles()).labels, (std::vector<std::int64_t>{0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(louvain(complete(5)).n_clusters, 1u);
}

TEST(Louvain, MoveGainsMatchRecomputedModularity) {
  std::size_t moves = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    oracle::RandomGraphSpec spec;
    spec.n = 8 + seed * 3;
    spec.weighted = seed % 2;
    spec.self_loops = seed % 3 == 0;
    spec.density = 0.15;
    const Graph g = oracle::random_graph(spec, 400 + seed);
    LouvainParams p;
    p.seed = seed;
    p.resolution = seed % 4 == 0 ? 0.7 : 1.0;
    p.on_move = [&](const LouvainMove& m) {
      std::vector<std::int64_t> before(m.level_labels.begin(), m.level_labels.end());
      before[m.node] = m.from;
      const double q_before = modularity(*m.level_adjacency, before, p.resolution);
      const double q_after = modularity(*m.level_adjacency, m.level_labels, p.resolution);
      EXPECT_NEAR(m.delta_q, q_after - q_before, 1e-9);
      EXPECT_GT(m.delta_q, 0.0);
      ++moves;
    };
    const LouvainResult r = louvain_run(g, p);
    EXPECT_GE(r.modularity, modularity(g, Partition::singletons(spec.n), p.resolution) - 1e-12);
  }
  EXPECT_GT(moves, 100u);
}

TEST(Louvain, DeterministicForSeedAndRecoversPlantedBlocks) {
  const SbmParams params = SbmParams::planted({40, 40, 40}, 0.3, 0.01, 5);
  const Graph g = generate_sbm(params);
  LouvainParams p;
  p.seed = 11;
  const Partition a = louvain(g, p);
  EXPECT_EQ(a, louvain(g, p));
  EXPECT_GE(matched_agreement(a, sbm_blocks(params)), 0.95);
}

TEST(Louvain, EdgelessAndDirected) {
  EXPECT_EQ(louvain(Graph(CsrMatrix(4, 4), false)), Partition::singletons(4));
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
  const Partition p = louvain(Graph::from_edges(e, 6, true));
  EXPECT_EQ(p.labels, (std::vector<std::int64_t>{0, 0, 0, 1, 1, 1}));
}

TEST(Louvain, ResolutionControlsGranularity) {
  const Graph g = karate_club();
  LouvainParams coarse, fine;
  coarse.resolution = 0.3;
  fine.resolution = 3.0;
  EXPECT_LT(louvain(g, coarse).n_clusters, louvain(g, fine).n_clusters);
}

TEST(SoftMembership, RowsSumToOne) {
  const Graph g = karate_club();
  const Partition p = louvain(g);
  const CsrMatrix m = soft_membership(g, p);
  EXPECT_EQ(m.n_rows(), 34u);
  EXPECT_EQ(m.n_cols(), p.n_clusters);
  for (double s : degrees(m, Axis::kRows)) EXPECT_NEAR(s, 1.0, 1e-12);
  const std::vector<Edge> e = {{0, 1}};
  const CsrMatrix iso = soft_membership(Graph::from_edges(e, 3, false), Partition{{0, 0, 1}, 2});
  EXPECT_DOUBLE_EQ(iso.at(2, 1), 1.0);
}

TEST(Aggregate, PreservesTotalWeightAndModularity) {
  const Graph g = karate_club();
  const Partition p = louvain(g);
  const Graph agg = aggregate(g, p);
  EXPECT_EQ(agg.n_nodes(), p.n_clusters);
  const auto sum = [](const CsrMatrix& m) {
    double s = 0.0;
    for (double w : m.data()) s += w;
    return s;
  };
  EXPECT_NEAR(sum(agg.adjacency()), sum(g.adjacency()), 1e-12);
  EXPECT_NEAR(modularity(agg, Partition::singletons(p.n_clusters)), modularity(g, p), 1e-12);
  const Eigen::MatrixXd a = oracle::dense(g);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(34, static_cast<Eigen::Index>(p.n_clusters));
  for (Eigen::Index i = 0; i < 34; ++i) m(i, p.labels[static_cast<std::size_t>(i)]) = 1.0;
  EXPECT_TRUE(oracle::dense(agg).isApprox(m.transpose() * a * m));
}

TEST(Partition, CompactAndAgreement) {
  const Partition p = Partition::compact(std::vector<std::int64_t>{7, 3, 7, -1, 9});
  EXPECT_EQ(p.labels, (std::vector<std::int64_t>{0, 1, 0, -1, 2}));
  EXPECT_EQ(p.n_clusters, 3u);
  const Partition a{{0, 0, 1, 1, 2}, 3};
  const Partition b{{2, 2, 0, 0, 1}, 3};
  EXPECT_DOUBLE_EQ(matched_agreement(a, b), 1.0);
  const Partition c{{0, 0, 0, 1, 1}, 2};
  EXPECT_DOUBLE_EQ(matched_agreement(a, c), 0.6);
}
