#include "sknet/generators.hpp"

#include <cmath>
#include <random>
#include <string>

#include "sknet/error.hpp"

namespace sknet {

namespace {

void validate(const SbmParams& p) {
  const std::size_t k = p.block_sizes.size();
  if (p.block_probs.size() != k) {
    throw ParameterError("block_probs must be " + std::to_string(k) + "x" +
                         std::to_string(k));
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (p.block_probs[a].size() != k) {
      throw ParameterError("block_probs row " + std::to_string(a) +
                           " has the wrong length");
    }
    for (std::size_t b = 0; b < k; ++b) {
      const double prob = p.block_probs[a][b];
      if (!(prob >= 0.0 && prob <= 1.0)) {
        throw ParameterError("block probability out of [0, 1] at (" +
                             std::to_string(a) + ", " + std::to_string(b) + ")");
      }
      if (prob != p.block_probs[b][a]) {
        throw ParameterError("block_probs must be symmetric");
      }
    }
  }
}

// Uniform in (0, 1].
double uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Number of failures before the next success of a Bernoulli(p) sequence.
std::uint64_t geometric_skip(std::mt19937_64& rng, double log_q) {
  const double skip = std::floor(std::log(uniform(rng)) / log_q);
  constexpr double kCap = 0x1.0p62;
  return skip >= kCap ? std::uint64_t{1} << 62 : static_cast<std::uint64_t>(skip);
}

}  // namespace

SbmParams SbmParams::planted(std::vector<std::size_t> sizes, double p_in,
                             double p_out, std::uint64_t seed) {
  SbmParams p;
  const std::size_t k = sizes.size();
  p.block_sizes = std::move(sizes);
  p.block_probs.assign(k, std::vector<double>(k, p_out));
  for (std::size_t a = 0; a < k; ++a) p.block_probs[a][a] = p_in;
  p.seed = seed;
  return p;
}

Graph generate_sbm(const SbmParams& params) {
  validate(params);
  const std::size_t k = params.block_sizes.size();
  std::vector<std::uint64_t> offset(k + 1, 0);
  for (std::size_t a = 0; a < k; ++a) offset[a + 1] = offset[a] + params.block_sizes[a];
  const std::uint64_t n = offset[k];

  std::mt19937_64 rng(params.seed);
  std::vector<Edge> edges;
  auto add = [&](std::uint64_t u, std::uint64_t v) {
    edges.push_back({u, v, 1.0});
    edges.push_back({v, u, 1.0});
  };

  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const double p = params.block_probs[a][b];
      if (p <= 0.0) continue;
      const std::uint64_t sa = params.block_sizes[a];
      const std::uint64_t sb = params.block_sizes[b];
      const double log_q = std::log1p(-p);
      auto next = [&]() -> std::uint64_t {
        return p >= 1.0 ? 0 : geometric_skip(rng, log_q);
      };
      if (a == b) {
        // Pairs (v, w) with w < v, enumerated row by row.
        std::uint64_t v = 1;
        std::uint64_t w = 0;
        std::uint64_t step = next();
        while (v < sa) {
          w += step;
          while (v < sa && w >= v) {
            w -= v;
            ++v;
          }
          if (v >= sa) break;
          add(offset[a] + v, offset[a] + w);
          ++w;
          step = next();
        }
      } else {
        const std::uint64_t total = sa * sb;
        std::uint64_t pos = next();
        while (pos < total) {
          add(offset[a] + pos / sb, offset[b] + pos % sb);
          const std::uint64_t skip = next();
          if (skip >= total - pos) break;
          pos += skip + 1;
        }
      }
    }
  }
  return Graph(CsrMatrix::from_edges(edges, n, n), false);
}

Partition sbm_blocks(const SbmParams& params) {
  Partition p;
  for (std::size_t a = 0; a < params.block_sizes.size(); ++a) {
    p.labels.insert(p.labels.end(), params.block_sizes[a],
                    static_cast<std::int64_t>(a));
  }
  p.n_clusters = params.block_sizes.size();
  return p;
}

}  // namespace sknet
