#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sknet/graph.hpp"
#include "sknet/partition.hpp"

namespace sknet::cli {

inline const std::vector<std::string> kBenchAlgorithms = {"louvain", "pagerank",
                                                           "hits", "spectral"};

struct BenchOptions {
  std::vector<std::string> algorithms = kBenchAlgorithms;
  std::size_t repeats = 3;
  std::size_t iterations = 100;
  std::size_t dim = 16;
  double resolution = 1.0;
  std::uint64_t seed = 0;
};

struct BenchRow {
  std::string algorithm;
  // Median wall-clock seconds over the repeats; unset when the run failed.
  std::optional<double> seconds;
  std::vector<double> all_seconds;
  double peak_rss_mb = 0.0;
  std::string error;
};

struct BenchReport {
  std::string graph_name;
  std::size_t n = 0;
  std::size_t m = 0;
  BenchOptions options;
  std::vector<BenchRow> rows;
  // Partition of the last Louvain repeat, for determinism checks.
  std::optional<Partition> louvain_partition;
};

// Runs every algorithm `repeats` times from scratch. A failing algorithm is
// recorded in its row and the remaining ones still run.
BenchReport run_bench(const Graph& g, const std::string& graph_name,
                      const BenchOptions& options);

// Two text tables (execution times, memory usage) under a protocol header.
std::string format_report(const BenchReport& report);
// One row per algorithm: algorithm, seconds, peak_rss_mb, status.
std::string format_report_tsv(const BenchReport& report);

// Process high-water mark of resident memory, in MB (VmHWM).
double peak_rss_mb();
// Resets the high-water mark where the kernel allows it; returns success.
bool reset_peak_rss();

}  // namespace sknet::cli
