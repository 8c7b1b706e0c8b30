#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "sknet/classification.hpp"
#include "sknet/datasets.hpp"
#include "sknet/error.hpp"

using namespace sknet;

namespace {

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (std::uint64_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph::from_edges(e, n, false);
}

}  // namespace

TEST(PageRankClassifier, DisconnectedComponents) {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {3, 4}, {4, 5}};
  const Graph g = Graph::from_edges(e, 6, false);
  const Partition p = pagerank_classifier(g, {{0, 0}, {5, 1}});
  EXPECT_EQ(p.labels, (std::vector<std::int64_t>{0, 0, 0, 1, 1, 1}));
}

TEST(PageRankClassifier, PathTieGoesToSmallestLabel) {
  const Partition p = pagerank_classifier(path(5), {{0, 3}, {4, 7}});
  EXPECT_EQ(p.labels, (std::vector<std::int64_t>{3, 3, 3, 7, 7}));
  const ClassifierScores s = pagerank_classifier_scores(path(5), {{0, 3}, {4, 7}}, 0.85, 400);
  EXPECT_NEAR(s.scores[0][2], s.scores[1][2], 1e-15);
  // Dense personalized PageRank oracle.
  Eigen::VectorXd r = Eigen::VectorXd::Zero(5);
  r[0] = 1.0;
  const Eigen::VectorXd ref = oracle::pagerank_fixed_point(oracle::dense(path(5)), 0.85, r);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(s.scores[0][static_cast<std::size_t>(i)], ref[i], 1e-12);
}

TEST(PageRankClassifier, ScoresAreDistributions) {
  const Graph g = karate_club();
  const SeedLabels seeds = {{0, 0}, {1, 0}, {33, 1}, {5, 2}};
  const ClassifierScores s = pagerank_classifier_scores(g, seeds);
  const std::vector<double> counts = {2, 1, 1};
  for (std::size_t l = 0; l < 3; ++l) {
    double sum = 0.0;
    for (double v : s.scores[l]) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum * counts[l], 1.0, 1e-9);
  }
}

TEST(PageRankClassifier, SeedsKeepLabelsAndPermutationInvariance) {
  const Graph g = karate_club();
  const SeedLabels seeds = {{0, 0}, {33, 1}, {16, 2}, {26, 1}};
  const Partition p = pagerank_classifier(g, seeds);
  for (const auto& [n, l] : seeds) EXPECT_EQ(p.labels[n], l);
  const std::vector<std::int64_t> perm = {2, 0, 1};
  SeedLabels permuted;
  for (const auto& [n, l] : seeds) permuted[n] = perm[static_cast<std::size_t>(l)];
  const Partition q = pagerank_classifier(g, permuted);
  for (std::size_t i = 0; i < 34; ++i) {
    EXPECT_EQ(q.labels[i], perm[static_cast<std::size_t>(p.labels[i])]);
  }
}

TEST(PageRankClassifier, Errors) {
  const Graph g = karate_club();
  EXPECT_THROW(pagerank_classifier(g, {}), ParameterError);
  EXPECT_THROW(pagerank_classifier(g, {{0, 1}, {2, 1}}), ParameterError);
  EXPECT_THROW(pagerank_classifier(g, {{0, 1}, {99, 0}}), ParameterError);
  EXPECT_THROW(label_propagation(g, {{0, 1}}), ParameterError);
}

TEST(LabelPropagation, StarAndIsolated) {
  std::vector<Edge> e;
  for (std::uint64_t i = 1; i < 6; ++i) e.push_back({0, i});
  const Graph g = Graph::from_edges(e, 7, false);
  const Partition p = label_propagation(g, {{0, 4}, {6, 9}}, 1);
  EXPECT_EQ(p.labels, (std::vector<std::int64_t>{4, 4, 4, 4, 4, 4, 9}));
  const Partition q = label_propagation(g, {{0, 4}, {1, 9}});
  EXPECT_EQ(q.labels[6], Partition::kUnknownLabel);
}

TEST(LabelPropagation, TwoTriangles) {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}};
  const Graph g = Graph::from_edges(e, 6, false);
  const Partition p = label_propagation(g, {{0, 0}, {5, 1}});
  EXPECT_EQ(p.labels, (std::vector<std::int64_t>{0, 0, 0, 1, 1, 1}));
}
