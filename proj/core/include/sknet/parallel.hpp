#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace sknet {

// Process-wide worker count used by row-parallel kernels. 0 restores the
// hardware default.
void set_num_threads(std::size_t n);
std::size_t num_threads();

// Splits [0, n) into `chunks` contiguous ranges and calls f(begin, end) for
// each, running all but the first on their own threads. Ranges are a pure
// function of (n, chunks), so per-range work is deterministic.
template <class F>
void parallel_for_chunks(std::size_t n, std::size_t chunks, F&& f) {
  chunks = std::max<std::size_t>(1, std::min(chunks, n));
  if (chunks <= 1) {
    f(std::size_t{0}, n);
    return;
  }
  const std::size_t base = n / chunks;
  const std::size_t extra = n % chunks;
  auto bounds = [&](std::size_t c) {
    std::size_t begin = c * base + std::min(c, extra);
    return std::pair{begin, begin + base + (c < extra ? 1 : 0)};
  };
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks - 1);
    for (std::size_t c = 1; c < chunks; ++c) {
      workers.emplace_back([&, c] {
        try {
          auto [b, e] = bounds(c);
          f(b, e);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
    try {
      auto [b, e] = bounds(0);
      f(b, e);
    } catch (...) {
      errors[0] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace sknet
