#pragma once

// Minimal index-parallel loop for embarrassingly parallel simulation runs.
// Each index is processed exactly once; results must be written to
// per-index slots so aggregation order stays deterministic.

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rrfcov {

// Runs fn(i) for i in [0, n). threads == 0 picks the hardware count;
// threads == 1 stays on the calling thread. The first exception thrown by
// any worker is rethrown after all workers finish.
template <class Fn>
void parallel_for_index(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rrfcov
