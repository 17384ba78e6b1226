#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace minvset {

/// Worker count for data-parallel steps: MINVSET_THREADS when set, otherwise
/// the hardware concurrency, clamped to [1, 16]. Results never depend on the
/// count; it only controls how work is split.
inline int worker_count() {
  int n = 0;
  if (const char* env = std::getenv("MINVSET_THREADS")) {
    n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(n, 1, 16);
}

/// Runs fn(chunk_index, begin, end) over [0, n) split into contiguous chunks,
/// one per worker. fn must write only to its own chunk's output slot.
inline void parallel_chunks(std::size_t n,
                            const std::function<void(int, std::size_t, std::size_t)>& fn) {
  const int workers = worker_count();
  if (workers <= 1 || n < 2) {
    fn(0, 0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  int used = 0;
  for (std::size_t begin = 0; begin < n; begin += chunk, ++used) {
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back(fn, used, begin, end);
  }
  for (auto& t : pool) t.join();
}

}  // namespace minvset
