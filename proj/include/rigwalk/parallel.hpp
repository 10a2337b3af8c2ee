#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rigwalk {

// Worker budget: RIGWALK_THREADS clamped to [1, 64], else hardware
// concurrency. Reading is cached; set_thread_budget(0) re-reads.
uint32_t thread_budget();
void set_thread_budget(uint32_t threads);

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = budget).
// Each index is processed exactly once; callers that write only to slot i
// get results independent of the worker count. The first exception thrown
// by any worker is rethrown after all join.
template <typename Fn>
void parallel_for(uint64_t count, Fn&& fn, uint32_t threads = 0) {
  if (threads == 0) threads = thread_budget();
  if (count == 0) return;
  if (threads <= 1 || count == 1) {
    for (uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (threads > count) threads = static_cast<uint32_t>(count);

  std::atomic<uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&] {
    for (;;) {
      uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count || failed.load(std::memory_order_relaxed)) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (uint32_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rigwalk
