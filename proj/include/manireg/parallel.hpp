#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace manireg::detail {

/// Worker count for embarrassingly parallel loops. Override with the
/// MANIREG_THREADS environment variable; values < 1 fall back to 1.
inline int thread_count() {
  if (const char* env = std::getenv("MANIREG_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(begin, end) over a partition of [0, n). Chunks are disjoint, so
/// results are identical for any worker count.
template <class Fn>
void parallel_for(int n, Fn&& fn) {
  const int workers = std::min(thread_count(), std::max(n, 1));
  if (workers <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace manireg::detail
