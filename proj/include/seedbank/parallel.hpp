#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace seedbank {

inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs body(replicate_index) for every index in [0, count) on a small
// worker pool.  Results must be keyed by the index (each worker writes its
// own slots), which makes the output independent of scheduling order.
template <class Body>
void for_each_replicate(std::uint64_t count, unsigned threads, Body&& body) {
  if (threads <= 1 || count < 2) {
    for (std::uint64_t r = 0; r < count; ++r) body(r);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= count) return;
      body(r);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace seedbank
