#include "sknet/parallel.hpp"

#include <atomic>

namespace sknet {

namespace {
std::atomic<std::size_t> g_num_threads{0};
}  // namespace

void set_num_threads(std::size_t n) { g_num_threads.store(n); }

std::size_t num_threads() {
  std::size_t n = g_num_threads.load();
  if (n == 0) n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

}  // namespace sknet
