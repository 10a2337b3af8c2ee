#pragma once

#include <cstdint>

#include "rigwalk/model.hpp"

namespace rigwalk {

// Small deterministic graph factories used by tests and the oracle command.
IntersectionGraph make_path(uint32_t n);
IntersectionGraph make_cycle(uint32_t n);
IntersectionGraph make_complete(uint32_t n);
IntersectionGraph make_star(uint32_t n);

// Random connected graph: a random spanning tree plus a sprinkling of extra
// edges. Deterministic in (n, seed).
IntersectionGraph random_connected(uint32_t n, uint64_t seed);

}  // namespace rigwalk
