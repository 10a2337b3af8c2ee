#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rigwalk {

struct GraphParams {
  uint32_t n = 0;   // vertex count
  uint64_t m = 0;   // attribute count
  double p = 0.0;   // link probability, in (0,1)
  uint64_t seed = 0;
};

// Every scalar the theory needs, derived once from (n, m, p). The primary
// triple is carried along so downstream formulas take a single argument.
struct DerivedQuantities {
  uint32_t n = 0;
  uint64_t m = 0;
  double p = 0.0;
  double np = 0.0;
  double c = 0.0;       // realized multiplier: m p (1-(1-p)^{n-1}) / ln n
  double d0 = 0.0;      // m p (1-(1-p)^{n-1})
  double d1 = 0.0;      // n m p^2
  uint32_t delta = 0;   // ceil(max(4 d0, 12 d1))
  double kappa = 0.0;   // np / (1 - e^{-np})
  double cbar = 0.0;    // kappa * c
  double pI = 0.0;      // 1 - (1-p^2)^m
  double pI_hat = 0.0;  // kappa * ln(n)/n
  double qB_hat = 0.0;  // ln(n)/n
  uint32_t i0 = 0;      // ceil((c-1) ln n)
  uint32_t k0 = 0;      // ceil(i0 * max(10 e^{np}(e^{np}-1), 2))
  double eps_n = 0.0;   // ln ln n / ln n
};

DerivedQuantities derive_quantities(uint32_t n, uint64_t m, double p);

struct ParamSetup {
  GraphParams params;
  DerivedQuantities derived;
};

// User-facing parameterization (n, c, np): p = np/n and m is rounded to the
// nearest integer solving m p (1-(1-p)^{n-1}) = c ln n; the reported c is
// recomputed from the rounded m. Requires n >= 8, c in (1, 50], np in (0, 30].
ParamSetup derive_params(uint32_t n, double c_target, double np_target, uint64_t seed);

// Direct (n, m, p) entry point; c comes out derived.
ParamSetup setup_from_nmp(uint32_t n, uint64_t m, double p, uint64_t seed);

// (pI, pI_hat) for arbitrary parameters.
std::pair<double, double> edge_density(uint32_t n, uint64_t m, double p);

// Attribute incidence lists: V(w) per attribute and W(v) per vertex.
struct BipartiteGraph {
  GraphParams params;
  std::vector<std::vector<uint32_t>> vertices_of_attr;  // V(w), ascending
  std::vector<std::vector<uint32_t>> attrs_of_vertex;   // W(v), ascending
};

struct IntersectionGraph {
  uint32_t n = 0;
  uint64_t edge_count = 0;
  std::vector<std::vector<uint32_t>> adj;  // ascending, simple, symmetric

  uint32_t deg(uint32_t v) const { return static_cast<uint32_t>(adj[v].size()); }
};

// Text formats with bit-exact round trips.
//   rig-v1: "rig-v1 n m p seed" then "w: v1 v2 ..." for attributes with |V(w)| >= 1
//   ig-v1:  "ig-v1 n" then "v: u1 u2 ..." for every vertex
std::string to_rig(const BipartiteGraph& b);
BipartiteGraph from_rig(const std::string& text);
std::string to_ig(const IntersectionGraph& g);
IntersectionGraph from_ig(const std::string& text);

void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

}  // namespace rigwalk
