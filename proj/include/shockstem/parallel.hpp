#ifndef SHOCKSTEM_PARALLEL_HPP
#define SHOCKSTEM_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace shockstem {

/// Worker count for sweep fan-out: MACHSTEM_THREADS if set, otherwise the
/// hardware concurrency, at least 1.
inline int worker_count() {
  if (const char* env = std::getenv("MACHSTEM_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, n) on a small pool. Results must be written to
/// per-index slots so the output is deterministic regardless of scheduling.
template <class Fn>
void parallel_for(long n, Fn&& fn) {
  int workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace shockstem

#endif
