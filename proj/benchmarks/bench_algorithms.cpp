#include <benchmark/benchmark.h>

#include <filesystem>
#include <map>
#include <unistd.h>

#include "sknet/sknet.hpp"

namespace {

// SBM with 10 blocks and average degree about 20.
const sknet::Graph& sbm(std::size_t n) {
  static std::map<std::size_t, sknet::Graph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const std::size_t block = n / 10;
    const double p_in = 16.0 / static_cast<double>(block);
    const double p_out = 4.0 / static_cast<double>(n - block);
    it = cache.emplace(n, sknet::generate_sbm(sknet::SbmParams::planted(
                              std::vector<std::size_t>(10, block), p_in, p_out, 1)))
             .first;
  }
  return it->second;
}

void set_edges(benchmark::State& state, const sknet::Graph& g) {
  state.counters["edges"] = static_cast<double>(g.n_edges());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.adjacency().nnz()));
}

void BM_Matvec(benchmark::State& state) {
  const sknet::Graph& g = sbm(static_cast<std::size_t>(state.range(0)));
  std::vector<double> x(g.n_nodes(), 1.0), y(g.n_nodes());
  for (auto _ : state) {
    sknet::matvec(g.adjacency(), x, y);
    benchmark::DoNotOptimize(y.data());
  }
  set_edges(state, g);
}

void BM_PageRank(benchmark::State& state) {
  const sknet::Graph& g = sbm(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sknet::pagerank(g));
  set_edges(state, g);
}

void BM_Hits(benchmark::State& state) {
  const sknet::Graph& g = sbm(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sknet::hits(g));
  set_edges(state, g);
}

void BM_Louvain(benchmark::State& state) {
  const sknet::Graph& g = sbm(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sknet::louvain(g));
  set_edges(state, g);
}

void BM_Spectral(benchmark::State& state) {
  const sknet::Graph& g = sbm(static_cast<std::size_t>(state.range(0)));
  sknet::SpectralParams p;
  p.dim = 16;
  for (auto _ : state) benchmark::DoNotOptimize(sknet::spectral_embedding(g, p));
  set_edges(state, g);
}

void BM_Agglomerate(benchmark::State& state) {
  const sknet::Graph& g = sbm(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sknet::agglomerate(g));
  set_edges(state, g);
}

void BM_LoadBinary(benchmark::State& state) {
  const sknet::Graph& g = sbm(static_cast<std::size_t>(state.range(0)));
  const auto path = std::filesystem::temp_directory_path() /
                    ("sknet_bench_" + std::to_string(::getpid()) + ".sknb");
  sknet::save_binary(g, path);
  for (auto _ : state) benchmark::DoNotOptimize(sknet::load_binary(path));
  std::filesystem::remove(path);
  set_edges(state, g);
}

}  // namespace

BENCHMARK(BM_Matvec)->Arg(10'000)->Arg(100'000);
BENCHMARK(BM_PageRank)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hits)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Louvain)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Spectral)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Agglomerate)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LoadBinary)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
