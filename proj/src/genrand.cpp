#include "rigwalk/genrand.hpp"

#include <algorithm>
#include <cmath>

#include "rigwalk/errors.hpp"
#include "rigwalk/rng.hpp"

namespace rigwalk {

BipartiteGraph sample_bipartite(const GraphParams& params) {
  if (params.n < 2 || params.m < 1 || !(params.p > 0.0 && params.p < 1.0))
    throw validation_error("sample_bipartite: invalid parameters");

  BipartiteGraph b;
  b.params = params;
  b.vertices_of_attr.resize(params.m);
  b.attrs_of_vertex.resize(params.n);
  const double log1mp = std::log1p(-params.p);
  for (uint64_t w = 0; w < params.m; ++w) {
    RngStream stream(params.seed, StreamPurpose::bipartite_links, w);
    uint64_t v = stream.skip_geometric(log1mp);
    auto& vw = b.vertices_of_attr[w];
    while (v < params.n) {
      vw.push_back(static_cast<uint32_t>(v));
      uint64_t skip = stream.skip_geometric(log1mp);
      if (skip >= params.n - v) break;  // also guards UINT64_MAX sentinel
      v += skip + 1;
    }
    for (uint32_t u : vw) b.attrs_of_vertex[u].push_back(static_cast<uint32_t>(w));
  }
  return b;
}

IntersectionGraph intersection_of(const BipartiteGraph& b, std::string* warning) {
  IntersectionGraph g;
  g.n = b.params.n;
  g.adj.resize(g.n);
  const double clique_guard = std::pow(static_cast<double>(g.n), 2.0 / 3.0);
  for (uint64_t w = 0; w < b.params.m; ++w) {
    const auto& vw = b.vertices_of_attr[w];
    if (vw.size() > clique_guard && warning) {
      *warning += "attribute " + std::to_string(w) + " has |V(w)|=" +
                  std::to_string(vw.size()) + " > n^(2/3); ";
    }
    for (size_t i = 0; i < vw.size(); ++i)
      for (size_t j = i + 1; j < vw.size(); ++j) {
        g.adj[vw[i]].push_back(vw[j]);
        g.adj[vw[j]].push_back(vw[i]);
      }
  }
  uint64_t deg_total = 0;
  for (auto& nbrs : g.adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    deg_total += nbrs.size();
  }
  g.edge_count = deg_total / 2;
  return g;
}

IntersectionGraph sample_er(uint32_t n, double q, uint64_t seed) {
  if (n < 1 || q < 0.0 || q > 1.0) throw validation_error("sample_er: invalid parameters");
  IntersectionGraph g;
  g.n = n;
  g.adj.resize(n);
  if (n < 2 || q == 0.0) return g;

  const uint64_t pairs = static_cast<uint64_t>(n) * (n - 1) / 2;
  auto emit = [&g](uint64_t r) {
    // Pair index r (row-major over i<j): recover the row by the triangular
    // root, then fix up any floating slip at the boundaries.
    double nd = g.n;
    uint64_t i = static_cast<uint64_t>((2 * nd - 1 - std::sqrt((2 * nd - 1) * (2 * nd - 1) - 8.0 * static_cast<double>(r))) / 2);
    auto row_start = [&](uint64_t row) { return row * (2 * g.n - row - 1) / 2; };
    while (i > 0 && row_start(i) > r) --i;
    while (row_start(i + 1) <= r) ++i;
    uint64_t j = i + 1 + (r - row_start(i));
    g.adj[i].push_back(static_cast<uint32_t>(j));
    g.adj[j].push_back(static_cast<uint32_t>(i));
  };

  RngStream stream(seed, StreamPurpose::er_pairs, 0);
  if (q == 1.0) {
    for (uint64_t r = 0; r < pairs; ++r) emit(r);
  } else {
    const double log1mq = std::log1p(-q);
    uint64_t r = stream.skip_geometric(log1mq);
    while (r < pairs) {
      emit(r);
      uint64_t skip = stream.skip_geometric(log1mq);
      if (skip >= pairs - r) break;
      r += skip + 1;
    }
  }
  uint64_t deg_total = 0;
  for (auto& nbrs : g.adj) {
    std::sort(nbrs.begin(), nbrs.end());
    deg_total += nbrs.size();
  }
  g.edge_count = deg_total / 2;
  return g;
}

}  // namespace rigwalk
