#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "bench.hpp"
#include "cli.hpp"
#include "test_paths.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sknet");
  std::ostringstream out, err;
  Result r;
  r.code = sknet::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string karate() { return std::string(SKNET_DATA_DIR_SOURCE) + "/karate_club.tsv"; }

std::vector<std::vector<std::string>> rows(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream f(line);
    for (std::string x; std::getline(f, x, '\t');) fields.push_back(x);
    out.push_back(fields);
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sknet_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(Cli, PageRankOnKarate) {
  const Result r = run({"pagerank", "--input", karate(), "--damping", "0.85", "--iters", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = rows(r.out);
  ASSERT_EQ(lines.size(), 34u);
  double total = 0.0;
  for (const auto& l : lines) total += std::stod(l.at(1));
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(Cli, InfoCountsNodesAndEdges) {
  const Result r = run({"info", "--input", karate()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("n\t34\n"), std::string::npos);
  EXPECT_NE(r.out.find("m\t78\n"), std::string::npos);
}

TEST_F(CliFiles, ConvertRoundTripKeepsSize) {
  const std::string bin = path("karate.sknb");
  ASSERT_EQ(run({"convert", "--input", karate(), "--output", bin}).code, 0);
  EXPECT_EQ(slurp(bin).substr(0, 4), "SKNB");
  EXPECT_EQ(run({"info", "--input", bin}).out, run({"info", "--input", karate()}).out);
  const std::string tsv = path("back.tsv");
  ASSERT_EQ(run({"convert", "--input", bin, "--output", tsv}).code, 0);
  EXPECT_EQ(run({"info", "--input", tsv}).out, run({"info", "--input", karate()}).out);
}

TEST(Cli, EverySubcommandHasHelp) {
  for (const std::string cmd :
       {"info", "pagerank", "hits", "katz", "harmonic", "louvain", "modularity", "hierarchy",
        "cut", "spectral", "svd", "gsvd", "classify", "bfs", "dijkstra", "components", "scc",
        "svg-graph", "svg-dendrogram", "sbm", "fetch", "convert", "bench"}) {
    const Result r = run({cmd, "--help"});
    EXPECT_EQ(r.code, 0) << cmd;
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << cmd;
  }
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, UsageAndRuntimeErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  const Result flag = run({"pagerank", "--input", karate(), "--bogus"});
  EXPECT_EQ(flag.code, 2);
  EXPECT_FALSE(flag.err.empty());
  EXPECT_TRUE(flag.out.empty());
  EXPECT_EQ(run({"pagerank"}).code, 2);
  const Result missing = run({"info", "--input", "/nonexistent/graph.tsv"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("not found"), std::string::npos);
  EXPECT_EQ(run({"bfs", "--input", karate(), "--source", "99"}).code, 1);
  EXPECT_EQ(run({"spectral", "--input", karate(), "--dim", "40"}).code, 1);
}

TEST(Cli, SeededOutputsAreByteIdentical) {
  for (const std::vector<std::string>& cmd :
       std::vector<std::vector<std::string>>{
           {"louvain", "--input", karate(), "--seed", "3"},
           {"spectral", "--input", karate(), "--dim", "4", "--seed", "3"},
           {"svg-graph", "--input", karate(), "--louvain", "--seed", "3"},
           {"svd", "--input", karate(), "--rank", "3", "--seed", "3"},
           {"sbm", "--sizes", "20,20", "--p-in", "0.3", "--p-out", "0.02", "--seed", "9"}}) {
    const Result a = run(cmd);
    ASSERT_EQ(a.code, 0) << cmd[0] << ": " << a.err;
    EXPECT_EQ(a.out, run(cmd).out) << cmd[0];
  }
}

TEST_F(CliFiles, FailedCommandLeavesOutputUntouched) {
  const std::string out = path("scores.tsv");
  {
    std::ofstream f(out);
    f << "previous\n";
  }
  const std::string labels = path("labels.tsv");
  {
    std::ofstream f(labels);
    f << "0\t0\n";  // incomplete labeling
  }
  const Result r = run({"modularity", "--input", karate(), "--labels", labels, "--output", out});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(slurp(out), "previous\n");
  for (const auto& entry : fs::directory_iterator(dir_)) {
    EXPECT_TRUE(entry.path() == out || entry.path() == labels) << entry.path();
  }
}

TEST_F(CliFiles, LouvainThenModularity) {
  const std::string labels = path("labels.tsv");
  ASSERT_EQ(run({"louvain", "--input", karate(), "--output", labels}).code, 0);
  const std::string text = slurp(labels);
  ASSERT_EQ(text.rfind("# modularity\t", 0), 0u);
  const std::string reported = text.substr(13, text.find('\n') - 13);
  const Result q = run({"modularity", "--input", karate(), "--labels", labels});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_EQ(q.out, reported + "\n");
  EXPECT_GE(std::stod(q.out), 0.40);
}

TEST_F(CliFiles, HierarchyCutAndSvg) {
  const std::string dendro = path("karate.dendrogram.tsv");
  ASSERT_EQ(run({"hierarchy", "--input", karate(), "--output", dendro}).code, 0);
  EXPECT_EQ(rows(slurp(dendro)).size(), 33u);
  for (const std::string k : {"1", "2", "5", "34"}) {
    const Result cut = run({"cut", "--dendrogram", dendro, "-k", k});
    ASSERT_EQ(cut.code, 0) << cut.err;
    std::set<std::string> clusters;
    for (const auto& l : rows(cut.out)) clusters.insert(l.at(1));
    EXPECT_EQ(clusters.size(), std::stoul(k));
  }
  EXPECT_EQ(run({"cut", "--dendrogram", dendro, "-k", "35"}).code, 1);
  const Result svg = run({"svg-dendrogram", "--dendrogram", dendro});
  ASSERT_EQ(svg.code, 0);
  EXPECT_EQ(svg.out, slurp(fs::path(SKNET_GOLDEN_DIR) / "karate_dendrogram.svg"));
  const Result compressed = run({"hierarchy", "--input", karate(), "--min-size", "5"});
  ASSERT_EQ(compressed.code, 0) << compressed.err;
  EXPECT_NE(compressed.out.find("# group 0\t"), std::string::npos);
}

TEST_F(CliFiles, PathsComponentsAndClassify) {
  const std::string g = path("g.tsv");
  {
    std::ofstream f(g);
    f << "a\tb\t1\nb\tc\t2\na\tc\t5\nd\te\t1\n";
  }
  const Result d = run({"dijkstra", "--input", g, "--source", "a"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.out, "a\t0\ta\nb\t1\ta\nc\t3\tb\nd\tinf\t-\ne\tinf\t-\n");
  EXPECT_EQ(run({"bfs", "--input", g, "--source", "a"}).out,
            "a\t0\ta\nb\t1\ta\nc\t1\ta\nd\tinf\t-\ne\tinf\t-\n");
  EXPECT_EQ(run({"components", "--input", g}).out, "a\t0\nb\t0\nc\t0\nd\t1\ne\t1\n");
  EXPECT_EQ(run({"scc", "--input", g, "--directed"}).out.size(),
            run({"components", "--input", g}).out.size());
  const std::string seeds = path("seeds.tsv");
  {
    std::ofstream f(seeds);
    f << "a\t4\nd\t9\n";
  }
  for (const std::string method : {"pagerank", "propagation"}) {
    const Result c = run({"classify", "--input", g, "--seeds", seeds, "--method", method});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(c.out, "a\t4\nb\t4\nc\t4\nd\t9\ne\t9\n") << method;
  }
}

TEST(Cli, RankingCommands) {
  for (const std::string cmd : {"hits", "katz", "harmonic"}) {
    const Result r = run({cmd, "--input", karate()});
    ASSERT_EQ(r.code, 0) << cmd << r.err;
    EXPECT_EQ(rows(r.out).size(), 34u);
  }
  const Result gs = run({"gsvd", "--input", "builtin:bipartite_demo", "--rank", "2"});
  ASSERT_EQ(gs.code, 0) << gs.err;
  EXPECT_EQ(rows(gs.out).size(), 8u);
  EXPECT_EQ(gs.out.rfind("# singular_values\t", 0), 0u);
}

TEST_F(CliFiles, SbmBinaryOutput) {
  const std::string out = path("sbm.sknb");
  ASSERT_EQ(run({"sbm", "--sizes", "30,30", "--p-in", "0.2", "--p-out", "0.01", "--output", out})
                .code,
            0);
  EXPECT_EQ(slurp(out).substr(0, 4), "SKNB");
  EXPECT_NE(run({"info", "--input", out}).out.find("n\t60\n"), std::string::npos);
}

TEST(Cli, BenchReport) {
  const Result r = run({"bench", "--input", karate(), "--repeats", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Execution times (in seconds)"), std::string::npos);
  EXPECT_NE(r.out.find("Memory usage (in MB)"), std::string::npos);
  const std::string tsv = r.out.substr(r.out.find("graph\tn\tm"));
  const auto lines = rows(tsv);
  ASSERT_EQ(lines.size(), 5u);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    EXPECT_GT(std::stod(lines[i].at(4)), 0.0);
    EXPECT_EQ(lines[i].at(11), "ok");
  }
}

TEST(Cli, BenchRecordsFailuresAndContinues) {
  const sknet::Graph tiny = sknet::Graph::from_edges(std::vector<sknet::Edge>{{0, 1}}, 2, false);
  sknet::cli::BenchOptions o;
  o.repeats = 1;
  const auto report = sknet::cli::run_bench(tiny, "tiny", o);
  ASSERT_EQ(report.rows.size(), 4u);
  EXPECT_FALSE(report.rows[3].seconds);  // spectral needs dim + 1 <= n
  EXPECT_FALSE(report.rows[3].error.empty());
  EXPECT_TRUE(report.rows[0].seconds);
  EXPECT_NE(sknet::cli::format_report(report).find("failed"), std::string::npos);
}

TEST(Cli, ExecutableExitCodes) {
  const std::string exe = SKNET_CLI_PATH;
  if (exe.empty()) GTEST_SKIP() << "CLI executable not built";
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("info --input " + karate()), 0);
  EXPECT_EQ(status("info --input /nonexistent"), 1);
  EXPECT_EQ(status("nope"), 2);
}
