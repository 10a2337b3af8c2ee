#include "rigwalk/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rigwalk/errors.hpp"

namespace rigwalk {

namespace {

// 1 - (1-p)^k without cancellation at small p.
double one_minus_pow(double p, double k) { return -std::expm1(k * std::log1p(-p)); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw validation_error(msg);
}

}  // namespace

DerivedQuantities derive_quantities(uint32_t n, uint64_t m, double p) {
  require(n >= 2, "n must be at least 2");
  require(m >= 1, "m must be at least 1");
  require(p > 0.0 && p < 1.0, "p must lie strictly between 0 and 1");

  DerivedQuantities q;
  q.n = n;
  q.m = m;
  q.p = p;
  q.np = static_cast<double>(n) * p;
  const double ln_n = std::log(static_cast<double>(n));
  const double md = static_cast<double>(m);
  q.d0 = md * p * one_minus_pow(p, static_cast<double>(n - 1));
  q.d1 = static_cast<double>(n) * md * p * p;
  q.delta = static_cast<uint32_t>(std::ceil(std::max(4.0 * q.d0, 12.0 * q.d1)));
  q.c = q.d0 / ln_n;
  q.kappa = q.np / -std::expm1(-q.np);
  q.cbar = q.kappa * q.c;
  q.pI = one_minus_pow(p * p, md);
  q.qB_hat = ln_n / n;
  q.pI_hat = q.kappa * q.qB_hat;
  q.eps_n = std::log(ln_n) / ln_n;
  if (q.c > 1.0) {
    q.i0 = static_cast<uint32_t>(std::ceil((q.c - 1.0) * ln_n));
    const double growth = std::max(10.0 * std::exp(q.np) * std::expm1(q.np), 2.0);
    q.k0 = static_cast<uint32_t>(std::ceil(q.i0 * growth));
  }
  return q;
}

ParamSetup derive_params(uint32_t n, double c_target, double np_target, uint64_t seed) {
  require(n >= 8, "n must be at least 8");
  require(c_target > 1.0, "the threshold multiplier c must exceed 1 "
                          "(the cover-time constant is undefined at c <= 1)");
  require(c_target <= 50.0, "c must be at most 50");
  require(np_target > 0.0 && np_target <= 30.0, "np must lie in (0, 30]");

  const double p = np_target / n;
  require(p < 1.0, "np/n must stay below 1");
  const double ln_n = std::log(static_cast<double>(n));
  const double m_real = c_target * ln_n / (p * one_minus_pow(p, static_cast<double>(n - 1)));
  const double m_rounded = std::nearbyint(m_real);
  require(m_rounded >= 1.0, "parameters yield an attribute count below 1");

  ParamSetup s;
  s.params.n = n;
  s.params.m = static_cast<uint64_t>(m_rounded);
  s.params.p = p;
  s.params.seed = seed;
  s.derived = derive_quantities(n, s.params.m, p);
  return s;
}

ParamSetup setup_from_nmp(uint32_t n, uint64_t m, double p, uint64_t seed) {
  ParamSetup s;
  s.params.n = n;
  s.params.m = m;
  s.params.p = p;
  s.params.seed = seed;
  s.derived = derive_quantities(n, m, p);
  return s;
}

std::pair<double, double> edge_density(uint32_t n, uint64_t m, double p) {
  const DerivedQuantities q = derive_quantities(n, m, p);
  return {q.pI, q.pI_hat};
}

namespace {

std::string format_p(double p) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

void append_id_line(std::string& out, uint64_t head, const std::vector<uint32_t>& ids) {
  out += std::to_string(head);
  out += ':';
  for (uint32_t v : ids) {
    out += ' ';
    out += std::to_string(v);
  }
  out += '\n';
}

}  // namespace

std::string to_rig(const BipartiteGraph& b) {
  std::string out = "rig-v1 " + std::to_string(b.params.n) + ' ' + std::to_string(b.params.m) +
                    ' ' + format_p(b.params.p) + ' ' + std::to_string(b.params.seed) + '\n';
  for (uint64_t w = 0; w < b.params.m; ++w) {
    if (!b.vertices_of_attr[w].empty()) append_id_line(out, w, b.vertices_of_attr[w]);
  }
  return out;
}

BipartiteGraph from_rig(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  BipartiteGraph b;
  in >> magic;
  require(magic == "rig-v1", "not a rig-v1 file");
  in >> b.params.n >> b.params.m >> b.params.p >> b.params.seed;
  require(static_cast<bool>(in), "malformed rig-v1 header");
  b.vertices_of_attr.resize(b.params.m);
  b.attrs_of_vertex.resize(b.params.n);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    uint64_t w = 0;
    char colon = 0;
    row >> w >> colon;
    require(static_cast<bool>(row) && colon == ':' && w < b.params.m, "malformed rig-v1 row");
    uint32_t v = 0;
    while (row >> v) {
      require(v < b.params.n, "vertex id out of range in rig-v1 row");
      b.vertices_of_attr[w].push_back(v);
      b.attrs_of_vertex[v].push_back(static_cast<uint32_t>(w));
    }
  }
  return b;
}

std::string to_ig(const IntersectionGraph& g) {
  std::string out = "ig-v1 " + std::to_string(g.n) + '\n';
  for (uint32_t v = 0; v < g.n; ++v) append_id_line(out, v, g.adj[v]);
  return out;
}

IntersectionGraph from_ig(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  IntersectionGraph g;
  in >> magic;
  require(magic == "ig-v1", "not an ig-v1 file");
  in >> g.n;
  require(static_cast<bool>(in), "malformed ig-v1 header");
  g.adj.resize(g.n);
  std::string line;
  std::getline(in, line);
  uint64_t deg_total = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    uint32_t v = 0;
    char colon = 0;
    row >> v >> colon;
    require(static_cast<bool>(row) && colon == ':' && v < g.n, "malformed ig-v1 row");
    uint32_t u = 0;
    while (row >> u) {
      require(u < g.n, "vertex id out of range in ig-v1 row");
      g.adj[v].push_back(u);
      ++deg_total;
    }
  }
  g.edge_count = deg_total / 2;
  return g;
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot open for writing: " + path);
  out << text;
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace rigwalk
