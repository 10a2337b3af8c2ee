#include "rigwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "rigwalk/errors.hpp"
#include "rigwalk/parallel.hpp"
#include "rigwalk/verify.hpp"

namespace rigwalk {

namespace {

using u128 = unsigned __int128;

void require(bool ok, const std::string& msg) {
  if (!ok) throw validation_error(msg);
}

std::vector<uint32_t> bfs_all(const IntersectionGraph& g, uint32_t from) {
  std::vector<uint32_t> dist(g.n, kInfiniteDistance);
  std::queue<uint32_t> queue;
  dist[from] = 0;
  queue.push(from);
  while (!queue.empty()) {
    uint32_t v = queue.front();
    queue.pop();
    for (uint32_t u : g.adj[v])
      if (dist[u] == kInfiniteDistance) {
        dist[u] = dist[v] + 1;
        queue.push(u);
      }
  }
  return dist;
}

bool is_connected(const IntersectionGraph& g) {
  if (g.n == 0) return false;
  const auto dist = bfs_all(g, 0);
  return std::find(dist.begin(), dist.end(), kInfiniteDistance) == dist.end();
}

}  // namespace

CoverWalkResult cover_walk(const IntersectionGraph& g, uint32_t start, RngStream& stream,
                           uint64_t step_cap) {
  require(start < g.n, "cover_walk: start vertex out of range");
  CoverWalkResult r;
  r.first_visit.assign(g.n, 0);

  std::array<uint32_t, 5> need{};
  for (size_t i = 0; i < need.size(); ++i)
    need[i] = std::max<uint32_t>(
        1, static_cast<uint32_t>(std::ceil(kCoverageFractions[i] * g.n)));

  std::vector<uint8_t> visited(g.n, 0);
  visited[start] = 1;
  uint32_t covered = 1;
  size_t next_fraction = 0;
  while (next_fraction < need.size() && covered >= need[next_fraction])
    r.coverage_steps[next_fraction++] = 0;

  uint32_t pos = start;
  uint64_t step = 0;
  while (covered < g.n) {
    const auto& nb = g.adj[pos];
    if (nb.empty())
      throw capacity_error("cover walk is stuck on a degree-zero vertex: the graph is not connected");
    if (step == step_cap)
      throw capacity_error("cover walk exceeded its step cap without covering: the graph is likely disconnected");
    ++step;
    pos = nb[stream.next_below(nb.size())];
    if (!visited[pos]) {
      visited[pos] = 1;
      r.first_visit[pos] = step;
      ++covered;
      while (next_fraction < need.size() && covered >= need[next_fraction])
        r.coverage_steps[next_fraction++] = step;
    }
  }
  r.steps = step;
  return r;
}

double exact_cover_time(const IntersectionGraph& g, uint32_t start) {
  const uint32_t n = g.n;
  require(start < n, "exact_cover_time: start vertex out of range");
  if (n > 12) throw capacity_error("the exact cover-time solver handles n <= 12");
  require(is_connected(g), "exact_cover_time: the graph must be connected");
  if (n == 1) return 0.0;

  const uint32_t full = (1u << n) - 1;
  // expected[s * n + v]: expected remaining steps with visited set s, at v.
  std::vector<double> expected(static_cast<size_t>(full + 1) * n, 0.0);

  std::vector<uint32_t> members;
  std::vector<int> index(n);
  std::vector<double> mat, rhs;
  for (uint32_t s = full - 1; s > 0; --s) {
    members.clear();
    for (uint32_t v = 0; v < n; ++v)
      if (s & (1u << v)) {
        index[v] = static_cast<int>(members.size());
        members.push_back(v);
      }
    const size_t k = members.size();
    mat.assign(k * k, 0.0);
    rhs.assign(k, 0.0);
    for (size_t a = 0; a < k; ++a) {
      const uint32_t v = members[a];
      const double inv_deg = 1.0 / g.deg(v);
      mat[a * k + a] = 1.0;
      rhs[a] = 1.0;
      for (uint32_t u : g.adj[v]) {
        if (s & (1u << u))
          mat[a * k + index[u]] -= inv_deg;
        else
          rhs[a] += inv_deg * expected[static_cast<size_t>(s | (1u << u)) * n + u];
      }
    }
    // Gaussian elimination with partial pivoting.
    for (size_t col = 0; col < k; ++col) {
      size_t pivot = col;
      for (size_t row = col + 1; row < k; ++row)
        if (std::abs(mat[row * k + col]) > std::abs(mat[pivot * k + col])) pivot = row;
      if (pivot != col) {
        for (size_t j = col; j < k; ++j) std::swap(mat[col * k + j], mat[pivot * k + j]);
        std::swap(rhs[col], rhs[pivot]);
      }
      const double diag = mat[col * k + col];
      for (size_t row = col + 1; row < k; ++row) {
        const double factor = mat[row * k + col] / diag;
        if (factor == 0.0) continue;
        for (size_t j = col; j < k; ++j) mat[row * k + j] -= factor * mat[col * k + j];
        rhs[row] -= factor * rhs[col];
      }
    }
    for (size_t row = k; row-- > 0;) {
      double acc = rhs[row];
      for (size_t j = row + 1; j < k; ++j) acc -= mat[row * k + j] * rhs[j];
      rhs[row] = acc / mat[row * k + row];
    }
    for (size_t a = 0; a < k; ++a)
      expected[static_cast<size_t>(s) * n + members[a]] = rhs[a];
  }
  return expected[static_cast<size_t>(1u << start) * n + start];
}

std::vector<uint32_t> default_start_set(const IntersectionGraph& g, uint32_t sampled,
                                        uint64_t master) {
  require(g.n >= 1, "default_start_set: empty graph");
  uint32_t min_v = 0, max_v = 0;
  for (uint32_t v = 1; v < g.n; ++v) {
    if (g.deg(v) < g.deg(min_v)) min_v = v;
    if (g.deg(v) > g.deg(max_v)) max_v = v;
  }
  std::vector<uint32_t> starts{min_v, max_v};
  RngStream stream(master, StreamPurpose::start_sampling, 0);
  for (uint32_t i = 0; i < sampled; ++i)
    starts.push_back(static_cast<uint32_t>(stream.next_below(g.n)));
  std::vector<uint32_t> unique_starts;
  for (uint32_t v : starts)
    if (std::find(unique_starts.begin(), unique_starts.end(), v) == unique_starts.end())
      unique_starts.push_back(v);
  return unique_starts;
}

CoverEstimate estimate_cover_time(const IntersectionGraph& g,
                                  const std::vector<uint32_t>& starts,
                                  uint64_t trials_per_start, uint64_t master,
                                  bool keep_trials) {
  require(!starts.empty(), "estimate_cover_time: need at least one start vertex");
  require(trials_per_start < (1ull << 32), "estimate_cover_time: trial count too large");
  for (uint32_t s : starts) require(s < g.n, "estimate_cover_time: start out of range");

  CoverEstimate est;
  est.per_start.resize(starts.size());
  if (trials_per_start == 0) {
    for (size_t i = 0; i < starts.size(); ++i) {
      est.per_start[i].start = starts[i];
      est.per_start[i].error_flag = true;
    }
    return est;
  }

  const uint64_t total = starts.size() * trials_per_start;
  std::vector<uint64_t> steps(total);
  std::vector<std::array<uint64_t, 5>> coverage(total);
  parallel_for(total, [&](uint64_t idx) {
    const uint64_t si = idx / trials_per_start;
    const uint64_t trial = idx % trials_per_start;
    RngStream stream(master, StreamPurpose::cover_trials, (si << 32) | trial);
    CoverWalkResult one = cover_walk(g, starts[si], stream);
    steps[idx] = one.steps;
    coverage[idx] = one.coverage_steps;
  });

  for (size_t si = 0; si < starts.size(); ++si) {
    WalkStats& stats = est.per_start[si];
    stats.start = starts[si];
    stats.trials = trials_per_start;
    u128 sum = 0, sum_sq = 0;
    std::array<u128, 5> cov_sum{};
    const uint64_t base = si * trials_per_start;
    for (uint64_t t = 0; t < trials_per_start; ++t) {
      const uint64_t x = steps[base + t];
      sum += x;
      sum_sq += static_cast<u128>(x) * x;
      for (size_t f = 0; f < 5; ++f) cov_sum[f] += coverage[base + t][f];
    }
    const long double N = static_cast<long double>(trials_per_start);
    stats.mean_cover_steps = static_cast<double>(static_cast<long double>(sum) / N);
    if (trials_per_start > 1) {
      const long double ls = static_cast<long double>(sum);
      long double var =
          (static_cast<long double>(sum_sq) - ls * ls / N) / (N - 1.0L);
      if (var < 0) var = 0;
      stats.std_error = static_cast<double>(std::sqrt(static_cast<double>(var / N)));
    }
    for (size_t f = 0; f < 5; ++f)
      stats.first_visit_quantiles[kCoverageFractions[f]] =
          static_cast<double>(static_cast<long double>(cov_sum[f]) / N);
    if (keep_trials)
      stats.per_trial_steps.assign(steps.begin() + base,
                                   steps.begin() + base + trials_per_start);
    if (stats.mean_cover_steps > est.c_empirical) {
      est.c_empirical = stats.mean_cover_steps;
      est.argmax_start = starts[si];
    }
  }
  return est;
}

ReturnStats return_stats(const IntersectionGraph& g, uint32_t v, uint32_t T,
                         uint64_t trials, uint64_t master) {
  require(v < g.n, "return_stats: vertex out of range");
  require(T >= 2, "return_stats: horizon must be at least 2");
  require(trials >= 2, "return_stats: need at least two trials");
  require(g.deg(v) > 0, "return_stats: vertex has no neighbors");

  uint64_t trials_with_return = 0;
  u128 return_sum = 0, return_sum_sq = 0;
  for (uint64_t trial = 0; trial < trials; ++trial) {
    RngStream stream(master, StreamPurpose::return_trials, trial);
    uint32_t pos = v;
    uint32_t returns = 0;
    for (uint32_t step = 1; step + 1 <= T; ++step) {
      const auto& nb = g.adj[pos];
      if (nb.empty())
        throw capacity_error("return walk stuck on a degree-zero vertex");
      pos = nb[stream.next_below(nb.size())];
      if (pos == v) ++returns;
    }
    trials_with_return += returns > 0 ? 1 : 0;
    return_sum += returns;
    return_sum_sq += static_cast<u128>(returns) * returns;
  }

  ReturnStats r;
  r.vertex = v;
  r.T = T;
  r.trials = trials;
  const long double N = static_cast<long double>(trials);
  r.pbar_v = static_cast<double>(trials_with_return / N);
  r.pbar_std_error = std::sqrt(std::max(0.0, r.pbar_v * (1.0 - r.pbar_v)) /
                               static_cast<double>(trials));
  const long double mean_returns = static_cast<long double>(return_sum) / N;
  r.R_T1 = static_cast<double>(1.0L + mean_returns);
  {
    const long double ls = static_cast<long double>(return_sum);
    long double var =
        (static_cast<long double>(return_sum_sq) - ls * ls / N) / (N - 1.0L);
    if (var < 0) var = 0;
    r.r_std_error = static_cast<double>(std::sqrt(static_cast<double>(var / N)));
  }
  r.pi_v = static_cast<double>(g.deg(v)) / (2.0 * static_cast<double>(g.edge_count));
  r.p_v = r.pi_v / r.R_T1;
  return r;
}

double exact_return_sum(const IntersectionGraph& g, uint32_t v, uint32_t T) {
  require(v < g.n, "exact_return_sum: vertex out of range");
  require(T >= 1, "exact_return_sum: horizon must be at least 1");
  if (g.n > 2000) throw capacity_error("exact return sums handle n <= 2000");
  require(g.deg(v) > 0, "exact_return_sum: vertex has no neighbors");

  std::vector<double> cur(g.n, 0.0), nxt(g.n);
  cur[v] = 1.0;
  double acc = 1.0;  // j = 0 term
  for (uint32_t j = 1; j < T; ++j) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (uint32_t u = 0; u < g.n; ++u) {
      if (cur[u] == 0.0) continue;
      const double w = cur[u] / g.deg(u);
      for (uint32_t nb : g.adj[u]) nxt[nb] += w;
    }
    cur.swap(nxt);
    acc += cur[v];
  }
  return acc;
}

MixingResult mixing_time_capped(const IntersectionGraph& g, double eps, uint32_t cap) {
  require(eps > 0.0, "mixing_time: eps must be positive");
  require(g.n >= 2 && g.edge_count >= 1, "mixing_time: need a graph with edges");

  std::vector<uint32_t> watched;
  MixingResult r;
  if (g.n <= 2000) {
    watched.resize(g.n);
    for (uint32_t v = 0; v < g.n; ++v) watched[v] = v;
  } else {
    r.estimate = true;
    // Fixed internal sampling seed: the estimate is a pure function of g.
    RngStream stream(0x6d697869u, StreamPurpose::start_sampling, 0);
    uint32_t min_v = 0;
    for (uint32_t v = 1; v < g.n; ++v)
      if (g.deg(v) < g.deg(min_v)) min_v = v;
    watched.push_back(min_v);
    for (uint32_t i = 0; i < 32; ++i)
      watched.push_back(static_cast<uint32_t>(stream.next_below(g.n)));
    std::sort(watched.begin(), watched.end());
    watched.erase(std::unique(watched.begin(), watched.end()), watched.end());
  }

  std::vector<double> pi(g.n);
  for (uint32_t v = 0; v < g.n; ++v)
    pi[v] = static_cast<double>(g.deg(v)) / (2.0 * static_cast<double>(g.edge_count));

  const size_t rows = watched.size();
  std::vector<std::vector<double>> cur(rows), nxt(rows);
  for (size_t i = 0; i < rows; ++i) {
    cur[i].assign(g.n, 0.0);
    nxt[i].assign(g.n, 0.0);
    cur[i][watched[i]] = 1.0;
  }

  double worst = 0.0;
  for (uint32_t t = 0;; ++t) {
    worst = 0.0;
    for (size_t i = 0; i < rows; ++i)
      for (uint32_t v = 0; v < g.n; ++v)
        worst = std::max(worst, std::abs(cur[i][v] - pi[v]));
    if (worst <= eps) {
      r.T = t;
      r.achieved = worst;
      r.converged = true;
      return r;
    }
    if (t == cap) break;
    for (size_t i = 0; i < rows; ++i) {
      std::fill(nxt[i].begin(), nxt[i].end(), 0.0);
      for (uint32_t u = 0; u < g.n; ++u) {
        if (cur[i][u] == 0.0) continue;
        const double w = cur[i][u] / g.deg(u);
        for (uint32_t nb : g.adj[u]) nxt[i][nb] += w;
      }
      cur[i].swap(nxt[i]);
    }
  }
  r.T = cap;
  r.achieved = worst;
  r.converged = false;
  return r;
}

uint32_t mixing_time(const IntersectionGraph& g, double eps) {
  const MixingResult r = mixing_time_capped(g, eps, 10000);
  if (!r.converged)
    throw capacity_error(
        "the walk did not reach the target accuracy within 10000 steps; a small "
        "spectral gap or two-periodic (bipartite) structure obstructs mixing");
  return r.T;
}

HorizonResult default_horizon(const IntersectionGraph& g) {
  HorizonResult h;
  const double eps = 1.0 / (static_cast<double>(g.n) * g.n * g.n);
  const uint32_t cap =
      20u * static_cast<uint32_t>(std::ceil(std::log(static_cast<double>(g.n))));
  h.mixing = mixing_time_capped(g, eps, cap);
  h.capped = !h.mixing.converged;
  h.T = h.mixing.converged ? h.mixing.T : cap;
  return h;
}

std::vector<double> unvisit_profile(const IntersectionGraph& g, uint32_t v, uint32_t T,
                                    const std::vector<uint64_t>& ts, uint64_t trials,
                                    uint64_t master) {
  require(v < g.n, "unvisit: vertex out of range");
  require(trials >= 1, "unvisit: need at least one trial");
  require(!ts.empty(), "unvisit: empty window grid");

  uint64_t t_max = 0;
  for (uint64_t t : ts) t_max = std::max(t_max, t);

  std::vector<uint64_t> avoided(ts.size(), 0);
  for (uint64_t trial = 0; trial < trials; ++trial) {
    RngStream stream(master, StreamPurpose::unvisit_trials, trial);
    uint32_t pos = static_cast<uint32_t>(stream.next_below(g.n));
    uint64_t tau = std::numeric_limits<uint64_t>::max();
    if (T == 0 && pos == v) tau = 0;
    if (tau == std::numeric_limits<uint64_t>::max()) {
      for (uint64_t step = 1; step <= t_max; ++step) {
        const auto& nb = g.adj[pos];
        if (nb.empty())
          throw capacity_error("unvisit walk stuck on a degree-zero vertex");
        pos = nb[stream.next_below(nb.size())];
        if (pos == v && step >= T) {
          tau = step;
          break;
        }
      }
    }
    for (size_t i = 0; i < ts.size(); ++i)
      if (tau > ts[i]) ++avoided[i];
  }

  std::vector<double> out(ts.size());
  for (size_t i = 0; i < ts.size(); ++i)
    out[i] = static_cast<double>(avoided[i]) / static_cast<double>(trials);
  return out;
}

double unvisit_probability(const IntersectionGraph& g, uint32_t v, uint32_t T, uint64_t t,
                           uint64_t trials, uint64_t master) {
  return unvisit_profile(g, v, T, {t}, trials, master)[0];
}

double joint_unvisit_probability(const IntersectionGraph& g, uint32_t x, uint32_t y,
                                 uint32_t T, uint64_t t, uint64_t trials, uint64_t master) {
  require(x < g.n && y < g.n, "joint unvisit: vertex out of range");
  require(trials >= 1, "joint unvisit: need at least one trial");

  uint64_t avoided = 0;
  for (uint64_t trial = 0; trial < trials; ++trial) {
    RngStream stream(master, StreamPurpose::unvisit_trials, trial);
    uint32_t pos = static_cast<uint32_t>(stream.next_below(g.n));
    bool hit = T == 0 && (pos == x || pos == y);
    if (!hit) {
      for (uint64_t step = 1; step <= t; ++step) {
        const auto& nb = g.adj[pos];
        if (nb.empty())
          throw capacity_error("unvisit walk stuck on a degree-zero vertex");
        pos = nb[stream.next_below(nb.size())];
        if ((pos == x || pos == y) && step >= T) {
          hit = true;
          break;
        }
      }
    }
    avoided += hit ? 0 : 1;
  }
  return static_cast<double>(avoided) / static_cast<double>(trials);
}

double unvisit_predictor(double p_v, uint64_t t) {
  require(p_v >= 0.0, "unvisit_predictor: rate must be nonnegative");
  return std::exp(-static_cast<double>(t) * std::log1p(p_v));
}

uint32_t MergedGraph::map_to_merged(uint32_t base_vertex) const {
  const uint32_t hi = std::max(x, y);
  if (base_vertex == hi) return merged;
  return base_vertex > hi ? base_vertex - 1 : base_vertex;
}

MergedGraph merge_vertices(const IntersectionGraph& g, uint32_t x, uint32_t y) {
  require(x < g.n && y < g.n && x != y, "merge_vertices: need two distinct vertices");
  const uint32_t d = bfs_distance(g, x, y, 20);
  require(d == kInfiniteDistance || d >= 20,
          "merge_vertices: the two vertices must be at distance >= 20");

  MergedGraph mg;
  mg.x = x;
  mg.y = y;
  const uint32_t lo = std::min(x, y), hi = std::max(x, y);
  mg.merged = lo;
  mg.graph.n = g.n - 1;
  mg.graph.edge_count = g.edge_count;
  mg.graph.adj.resize(g.n - 1);

  auto map = [&](uint32_t v) { return v == hi ? lo : (v > hi ? v - 1 : v); };
  for (uint32_t v = 0; v < g.n; ++v) {
    if (v == hi) continue;
    auto& out = mg.graph.adj[map(v)];
    out.reserve(g.adj[v].size() + (v == lo ? g.adj[hi].size() : 0));
    for (uint32_t u : g.adj[v]) out.push_back(map(u));
  }
  for (uint32_t u : g.adj[hi]) mg.graph.adj[lo].push_back(map(u));
  for (auto& list : mg.graph.adj) std::sort(list.begin(), list.end());
  return mg;
}

std::optional<std::pair<uint32_t, uint32_t>> sample_far_pair(const IntersectionGraph& g,
                                                             uint32_t min_dist,
                                                             uint32_t attempts,
                                                             uint64_t master) {
  require(g.n >= 2, "sample_far_pair: need at least two vertices");
  RngStream stream(master, StreamPurpose::pair_sampling, 0);
  for (uint32_t attempt = 0; attempt < attempts; ++attempt) {
    const uint32_t x = static_cast<uint32_t>(stream.next_below(g.n));
    const auto dist = bfs_all(g, x);
    std::vector<uint32_t> far;
    for (uint32_t v = 0; v < g.n; ++v)
      if (dist[v] != kInfiniteDistance && dist[v] >= min_dist) far.push_back(v);
    if (!far.empty())
      return std::make_pair(x, far[stream.next_below(far.size())]);
  }
  return std::nullopt;
}

std::pair<std::pair<uint32_t, uint32_t>, uint32_t> approx_farthest_pair(
    const IntersectionGraph& g, uint32_t attempts, uint64_t master) {
  require(g.n >= 2, "approx_farthest_pair: need at least two vertices");
  RngStream stream(master, StreamPurpose::pair_sampling, 1);
  std::pair<uint32_t, uint32_t> best{0, 0};
  uint32_t best_dist = 0;
  auto farthest = [&](uint32_t from) {
    const auto dist = bfs_all(g, from);
    uint32_t arg = from, d = 0;
    for (uint32_t v = 0; v < g.n; ++v)
      if (dist[v] != kInfiniteDistance && dist[v] > d) {
        d = dist[v];
        arg = v;
      }
    return std::make_pair(arg, d);
  };
  for (uint32_t attempt = 0; attempt < attempts; ++attempt) {
    const uint32_t v0 = static_cast<uint32_t>(stream.next_below(g.n));
    const auto [f1, d1] = farthest(v0);
    (void)d1;
    const auto [f2, d2] = farthest(f1);
    if (d2 > best_dist) {
      best_dist = d2;
      best = {f1, f2};
    }
  }
  return {best, best_dist};
}

}  // namespace rigwalk
