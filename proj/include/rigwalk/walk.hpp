#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rigwalk/model.hpp"
#include "rigwalk/rng.hpp"

namespace rigwalk {

// Coverage fractions at which first-visit times are recorded.
inline constexpr std::array<double, 5> kCoverageFractions{0.25, 0.5, 0.9, 0.99, 1.0};

struct CoverWalkResult {
  uint64_t steps = 0;                      // step index of the last first visit
  std::vector<uint64_t> first_visit;       // per vertex; start gets 0
  std::array<uint64_t, 5> coverage_steps{};  // step reaching each fraction
};

// One simple random walk from `start`, run until every vertex has been
// visited. Uniform neighbor choice each step. A walk exceeding step_cap
// (default 10^10, the disconnected-graph diagnostic) throws capacity_error.
CoverWalkResult cover_walk(const IntersectionGraph& g, uint32_t start, RngStream& stream,
                           uint64_t step_cap = 10'000'000'000ULL);

// Exact expected cover time from `start` by dynamic programming over
// (visited set, current vertex) states, solving one linear system per
// visited set in decreasing-cardinality order. n <= 12.
double exact_cover_time(const IntersectionGraph& g, uint32_t start);

// Monte Carlo cover statistics for one start vertex. Step counts accumulate
// in 128-bit integers, so aggregation order cannot change the result.
struct WalkStats {
  uint32_t start = 0;
  uint64_t trials = 0;
  double mean_cover_steps = 0.0;
  double std_error = 0.0;                       // of the mean
  std::vector<uint64_t> per_trial_steps;        // filled when keep_trials
  std::map<double, double> first_visit_quantiles;  // fraction -> mean step
  bool error_flag = false;                      // trials == 0
};

struct CoverEstimate {
  std::vector<WalkStats> per_start;
  double c_empirical = 0.0;  // max over starts of the mean
  uint32_t argmax_start = 0;
};

// Min-degree vertex, max-degree vertex, then `sampled` uniform draws
// (deduplicated, order preserved).
std::vector<uint32_t> default_start_set(const IntersectionGraph& g, uint32_t sampled,
                                        uint64_t master);

CoverEstimate estimate_cover_time(const IntersectionGraph& g,
                                  const std::vector<uint32_t>& starts,
                                  uint64_t trials_per_start, uint64_t master,
                                  bool keep_trials = false);

// First-return statistics of the walk started at v, horizon T.
//   pbar_v: fraction of trials returning to v by step T-1
//   R_T1:   1 + mean number of returns during steps 1..T-1
//   pi_v:   deg(v) / 2|E|;   p_v = pi_v / R_T1
struct ReturnStats {
  uint32_t vertex = 0;
  uint32_t T = 0;
  uint64_t trials = 0;
  double pbar_v = 0.0;
  double pbar_std_error = 0.0;
  double R_T1 = 1.0;
  double r_std_error = 0.0;
  double pi_v = 0.0;
  double p_v = 0.0;
};
ReturnStats return_stats(const IntersectionGraph& g, uint32_t v, uint32_t T,
                         uint64_t trials, uint64_t master);

// Exact sum of return probabilities sum_{j=0}^{T-1} P^j(v,v) by sparse
// row-vector powers; n <= 2000.
double exact_return_sum(const IntersectionGraph& g, uint32_t v, uint32_t T);

// Smallest t with max over watched starts u and all v of |P_u^t(v) - pi_v|
// <= eps. Watches every start for n <= 2000; otherwise 32 fixed-seed samples
// plus the min-degree vertex, and the result is labeled an estimate.
struct MixingResult {
  uint32_t T = 0;
  double achieved = 0.0;  // the sup metric at T
  bool converged = false;
  bool estimate = false;
};
MixingResult mixing_time_capped(const IntersectionGraph& g, double eps, uint32_t cap);

// As above with cap 10^4; non-convergence (e.g. a bipartite or otherwise
// slowly mixing chain) throws capacity_error.
uint32_t mixing_time(const IntersectionGraph& g, double eps);

// Default estimator horizon: the eps = n^-3 mixing time, capped at
// 20 ceil(ln n). The cap being hit is recorded, not an error.
struct HorizonResult {
  uint32_t T = 0;
  bool capped = false;
  MixingResult mixing;
};
HorizonResult default_horizon(const IntersectionGraph& g);

// Probability that a walk from a uniformly random start makes no visit to v
// during steps [T, t]. Windows with t < T have probability 1. The profile
// variant evaluates a whole t-grid on coupled trials (one walk per trial
// serves every t), so it is non-increasing across the grid by construction.
double unvisit_probability(const IntersectionGraph& g, uint32_t v, uint32_t T, uint64_t t,
                           uint64_t trials, uint64_t master);
std::vector<double> unvisit_profile(const IntersectionGraph& g, uint32_t v, uint32_t T,
                                    const std::vector<uint64_t>& ts, uint64_t trials,
                                    uint64_t master);

// Same event for a pair of vertices jointly: no visit to either during [T, t].
double joint_unvisit_probability(const IntersectionGraph& g, uint32_t x, uint32_t y,
                                 uint32_t T, uint64_t t, uint64_t trials, uint64_t master);

// Model prediction (1 + p_v)^{-t} for the unvisit probability.
double unvisit_predictor(double p_v, uint64_t t);

// Identification of two vertices at distance >= 20. The merged graph is
// materialized: x keeps its id (now carrying N(x) u N(y), disjoint by the
// distance precondition), y is removed and higher ids shift down by one.
struct MergedGraph {
  IntersectionGraph graph;
  uint32_t x = 0;       // base-graph ids
  uint32_t y = 0;
  uint32_t merged = 0;  // id of the merged vertex in `graph`

  uint32_t map_to_merged(uint32_t base_vertex) const;
};
MergedGraph merge_vertices(const IntersectionGraph& g, uint32_t x, uint32_t y);

// Uniform vertex pair at distance >= min_dist, if one is found within
// `attempts` BFS sweeps from uniform starts.
std::optional<std::pair<uint32_t, uint32_t>> sample_far_pair(const IntersectionGraph& g,
                                                             uint32_t min_dist,
                                                             uint32_t attempts,
                                                             uint64_t master);

// Best-effort farthest pair via repeated double BFS sweeps; returns the pair
// and its distance.
std::pair<std::pair<uint32_t, uint32_t>, uint32_t> approx_farthest_pair(
    const IntersectionGraph& g, uint32_t attempts, uint64_t master);

}  // namespace rigwalk
