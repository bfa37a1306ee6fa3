#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace stereo::detail {

inline unsigned worker_count(unsigned requested, std::size_t items) {
  unsigned n = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
  if (items < n) n = static_cast<unsigned>(std::max<std::size_t>(items, 1));
  return n;
}

/// Runs `body(i)` for every i in [0, count) on a pool of threads; items are handed out by an
/// atomic cursor so each index runs exactly once. Results must be written to per-index slots
/// by the body, which keeps merged output independent of scheduling.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const unsigned workers = worker_count(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed); i < count;
           i = cursor.fetch_add(1, std::memory_order_relaxed)) {
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace stereo::detail
