#pragma once

#include <cstdint>
#include <string>

#include "rigwalk/model.hpp"

namespace rigwalk {

// Samples B(n,m,p): every (vertex, attribute) pair is linked independently
// with probability p. One RNG stream per attribute, keyed by params.seed, so
// the result is identical no matter how work is scheduled. Expected cost
// O(m + nmp) via geometric skip-sampling.
BipartiteGraph sample_bipartite(const GraphParams& params);

// Builds G(n,m,p) from B by expanding each V(w) into a clique and collapsing
// duplicates (the model graph is simple). If some |V(w)| > n^{2/3} — far
// outside the sparse regime the predictions assume — the build proceeds and a
// note is appended to *warning when given.
IntersectionGraph intersection_of(const BipartiteGraph& b, std::string* warning = nullptr);

// Erdős–Rényi G(n,q) by geometric skip-sampling over the C(n,2) pair indices.
IntersectionGraph sample_er(uint32_t n, double q, uint64_t seed);

}  // namespace rigwalk
