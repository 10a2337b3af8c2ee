#include "rigwalk/corpus.hpp"

#include <algorithm>

#include "rigwalk/errors.hpp"
#include "rigwalk/rng.hpp"

namespace rigwalk {

namespace {

IntersectionGraph empty_graph(uint32_t n) {
  IntersectionGraph g;
  g.n = n;
  g.adj.resize(n);
  return g;
}

void add_edge(IntersectionGraph& g, uint32_t u, uint32_t v) {
  g.adj[u].push_back(v);
  g.adj[v].push_back(u);
  ++g.edge_count;
}

void finalize(IntersectionGraph& g) {
  for (auto& list : g.adj) std::sort(list.begin(), list.end());
}

}  // namespace

IntersectionGraph make_path(uint32_t n) {
  if (n == 0) throw validation_error("make_path: need at least one vertex");
  IntersectionGraph g = empty_graph(n);
  for (uint32_t v = 0; v + 1 < n; ++v) add_edge(g, v, v + 1);
  finalize(g);
  return g;
}

IntersectionGraph make_cycle(uint32_t n) {
  if (n < 3) throw validation_error("make_cycle: need at least three vertices");
  IntersectionGraph g = empty_graph(n);
  for (uint32_t v = 0; v + 1 < n; ++v) add_edge(g, v, v + 1);
  add_edge(g, n - 1, 0);
  finalize(g);
  return g;
}

IntersectionGraph make_complete(uint32_t n) {
  if (n == 0) throw validation_error("make_complete: need at least one vertex");
  IntersectionGraph g = empty_graph(n);
  for (uint32_t u = 0; u < n; ++u)
    for (uint32_t v = u + 1; v < n; ++v) add_edge(g, u, v);
  finalize(g);
  return g;
}

IntersectionGraph make_star(uint32_t n) {
  if (n < 2) throw validation_error("make_star: need at least two vertices");
  IntersectionGraph g = empty_graph(n);
  for (uint32_t v = 1; v < n; ++v) add_edge(g, 0, v);
  finalize(g);
  return g;
}

IntersectionGraph random_connected(uint32_t n, uint64_t seed) {
  if (n == 0) throw validation_error("random_connected: need at least one vertex");
  IntersectionGraph g = empty_graph(n);
  RngStream stream(seed, StreamPurpose::graph_corpus, 0);
  // Random spanning tree: attach each vertex to a uniformly chosen predecessor.
  for (uint32_t v = 1; v < n; ++v)
    add_edge(g, v, static_cast<uint32_t>(stream.next_below(v)));
  // Sprinkle extra edges on top of the tree.
  for (uint32_t u = 0; u < n; ++u)
    for (uint32_t v = u + 2; v < n; ++v) {
      if (stream.next_double() >= 0.3) continue;
      if (std::find(g.adj[u].begin(), g.adj[u].end(), v) != g.adj[u].end()) continue;
      add_edge(g, u, v);
    }
  finalize(g);
  return g;
}

}  // namespace rigwalk
