#pragma once

#include <cmath>
#include <cstdint>

namespace rigwalk {

// Purpose tags keep RNG streams from different experiment stages disjoint even
// when they share a master seed and an index.
enum class StreamPurpose : uint64_t {
  bipartite_links = 1,
  er_pairs = 2,
  cover_trials = 3,
  return_trials = 4,
  unvisit_trials = 5,
  start_sampling = 6,
  graph_corpus = 7,
  pair_sampling = 8,
  subset_search = 9,
};

namespace detail {

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace detail

// Counter-based stream: output i is mix64(key + (i+1)*golden), i.e. a
// splitmix64 sequence whose key is derived from (master, purpose, index).
// Any trial can therefore be generated on any thread, in any order, and the
// bytes are identical.
class RngStream {
 public:
  RngStream(uint64_t master, StreamPurpose purpose, uint64_t index) {
    using detail::kGolden;
    using detail::mix64;
    uint64_t k = mix64(master + kGolden);
    k = mix64(k + static_cast<uint64_t>(purpose) * kGolden);
    key_ = mix64(k + index * kGolden);
  }

  uint64_t next() {
    counter_ += detail::kGolden;
    return detail::mix64(key_ + counter_);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), unbiased (Lemire multiply-shift with rejection).
  uint64_t next_below(uint64_t bound) {
    uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<uint64_t>(m);
    if (lo < bound) {
      uint64_t threshold = -bound % bound;
      while (lo < threshold) {
        x = next();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Number of Bernoulli(p) failures before the next success, given
  // log1mp = log1p(-p). Lets samplers skip directly between successes.
  uint64_t skip_geometric(double log1mp) {
    double u = next_double();
    double g = std::log1p(-u) / log1mp;
    if (g >= 9.2e18) return UINT64_MAX;  // degenerate p -> caller's bound applies
    return static_cast<uint64_t>(g);
  }

 private:
  uint64_t key_ = 0;
  uint64_t counter_ = 0;
};

}  // namespace rigwalk
