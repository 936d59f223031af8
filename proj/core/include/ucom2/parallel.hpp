// Minimal fork-join helper used by the per-node ID scans and bench fan-out.
#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace ucom2 {

// Worker count: UCOM2_THREADS if set, otherwise the hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("UCOM2_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs f(i) for i in [begin, end). Results must be written to disjoint
// per-index slots; the reduction order is then deterministic regardless of
// the schedule.
template <class F>
void parallel_for(int begin, int end, F&& f) {
  const int count = end - begin;
  const int workers = std::min(thread_count(), count);
  if (workers <= 1 || count < 2) {
    for (int i = begin; i < end; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const int chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &f] {
      for (int i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ucom2
