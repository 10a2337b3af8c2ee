#include "rigwalk/parallel.hpp"

#include <cstdlib>
#include <string>

namespace rigwalk {

namespace {

uint32_t read_budget() {
  if (const char* env = std::getenv("RIGWALK_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<uint32_t>(v > 64 ? 64 : v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::atomic<uint32_t> g_budget{0};

}  // namespace

uint32_t thread_budget() {
  uint32_t b = g_budget.load(std::memory_order_relaxed);
  if (b == 0) {
    b = read_budget();
    g_budget.store(b, std::memory_order_relaxed);
  }
  return b;
}

void set_thread_budget(uint32_t threads) {
  g_budget.store(threads > 64 ? 64 : threads, std::memory_order_relaxed);
}

}  // namespace rigwalk
