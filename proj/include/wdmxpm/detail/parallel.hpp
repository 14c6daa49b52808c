#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace wdmxpm::detail {

// Worker count from WDMXPM_WORKERS; 1 when unset or malformed.
inline int env_worker_count() {
  const char* env = std::getenv("WDMXPM_WORKERS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

// Runs fn(i) for i in [0, n). Each index must write only its own outputs;
// then the result is identical for any worker count.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nw =
      std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += nw) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace wdmxpm::detail
