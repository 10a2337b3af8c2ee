#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rigwalk/corpus.hpp"
#include "rigwalk/errors.hpp"
#include "rigwalk/parallel.hpp"
#include "rigwalk/rng.hpp"
#include "rigwalk/verify.hpp"
#include "rigwalk/walk.hpp"

using namespace rigwalk;

namespace {

IntersectionGraph two_component_graph() {
  IntersectionGraph g;
  g.n = 4;
  g.adj = {{1}, {0}, {3}, {2}};
  g.edge_count = 2;
  return g;
}

}  // namespace

TEST_CASE("exact cover times on the named corpus") {
  CHECK(exact_cover_time(make_path(2), 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact_cover_time(make_path(3), 0) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(exact_cover_time(make_path(3), 1) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(exact_cover_time(make_cycle(4), 0) == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(exact_cover_time(make_cycle(8), 0) == doctest::Approx(28.0).epsilon(1e-10));
  CHECK(exact_cover_time(make_complete(3), 0) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(exact_cover_time(make_complete(4), 0) == doctest::Approx(5.5).epsilon(1e-10));
  // Star from the hub: coupon collection with two steps per coupon, minus one.
  const double h4 = 1.0 + 0.5 + 1.0 / 3.0 + 0.25;
  CHECK(exact_cover_time(make_star(5), 0) ==
        doctest::Approx(8.0 * h4 - 1.0).epsilon(1e-10));
  CHECK(exact_cover_time(make_path(1), 0) == doctest::Approx(0.0));
}

TEST_CASE("exact solver guards its domain") {
  CHECK_THROWS_AS(exact_cover_time(make_cycle(13), 0), capacity_error);
  CHECK_THROWS_AS(exact_cover_time(two_component_graph(), 0), validation_error);
  CHECK_THROWS_AS(exact_cover_time(make_path(4), 9), validation_error);
}

TEST_CASE("simulation agrees with the exact solver") {
  const CoverEstimate c8 = estimate_cover_time(make_cycle(8), {0}, 200000, 2024);
  CHECK(c8.per_start[0].mean_cover_steps == doctest::Approx(28.0).epsilon(0.01));
  CHECK(std::abs(c8.per_start[0].mean_cover_steps - 28.0) <
        4 * c8.per_start[0].std_error + 1e-9);

  const CoverEstimate k4 = estimate_cover_time(make_complete(4), {0}, 100000, 2024);
  CHECK(std::abs(k4.per_start[0].mean_cover_steps - 5.5) < 0.1);
}

TEST_CASE("single edge covers in exactly one step") {
  const CoverEstimate est = estimate_cover_time(make_path(2), {0}, 50, 1, true);
  CHECK(est.per_start[0].mean_cover_steps == doctest::Approx(1.0));
  CHECK(est.per_start[0].std_error == doctest::Approx(0.0));
  for (uint64_t steps : est.per_start[0].per_trial_steps) CHECK(steps == 1);
}

TEST_CASE("start vertex matters only within noise on a transitive graph") {
  const IntersectionGraph g = make_cycle(8);
  const CoverEstimate est = estimate_cover_time(g, {0, 3, 5}, 20000, 99);
  for (size_t i = 1; i < est.per_start.size(); ++i) {
    const double diff =
        est.per_start[i].mean_cover_steps - est.per_start[0].mean_cover_steps;
    const double joint = std::hypot(est.per_start[i].std_error,
                                    est.per_start[0].std_error);
    CHECK(std::abs(diff) < 4 * joint);
  }
  CHECK(est.c_empirical >= est.per_start[0].mean_cover_steps);
}

TEST_CASE("zero trials is flagged, not computed") {
  const CoverEstimate est = estimate_cover_time(make_cycle(4), {0}, 0, 1);
  CHECK(est.per_start[0].error_flag);
  CHECK(est.c_empirical == doctest::Approx(0.0));
}

TEST_CASE("results do not depend on the thread budget") {
  const IntersectionGraph g = random_connected(24, 5);
  set_thread_budget(1);
  const CoverEstimate serial = estimate_cover_time(g, {0, 7}, 200, 31, true);
  set_thread_budget(3);
  const CoverEstimate threaded = estimate_cover_time(g, {0, 7}, 200, 31, true);
  set_thread_budget(1);
  for (size_t s = 0; s < 2; ++s) {
    CHECK(serial.per_start[s].per_trial_steps == threaded.per_start[s].per_trial_steps);
    CHECK(serial.per_start[s].mean_cover_steps ==
          doctest::Approx(threaded.per_start[s].mean_cover_steps).epsilon(1e-15));
  }
}

TEST_CASE("walks that cannot cover hit the cap or a dead end") {
  RngStream stream(1, StreamPurpose::cover_trials, 0);
  CHECK_THROWS_AS(cover_walk(two_component_graph(), 0, stream, 1000), capacity_error);

  IntersectionGraph isolated;
  isolated.n = 2;
  isolated.adj = {{}, {}};
  RngStream stream2(1, StreamPurpose::cover_trials, 1);
  CHECK_THROWS_AS(cover_walk(isolated, 0, stream2, 1000), capacity_error);
}

TEST_CASE("coverage checkpoints are monotone") {
  const IntersectionGraph g = random_connected(40, 9);
  RngStream stream(3, StreamPurpose::cover_trials, 0);
  const CoverWalkResult r = cover_walk(g, 0, stream);
  CHECK(r.first_visit[0] == 0);
  for (size_t i = 1; i < r.coverage_steps.size(); ++i)
    CHECK(r.coverage_steps[i] >= r.coverage_steps[i - 1]);
  CHECK(r.coverage_steps.back() == r.steps);
}

TEST_CASE("default start set keeps degree extremes") {
  const IntersectionGraph g = make_star(6);
  const auto starts = default_start_set(g, 3, 17);
  CHECK(!starts.empty());
  bool has_hub = false, has_leaf = false;
  for (uint32_t s : starts) {
    if (g.deg(s) == 5) has_hub = true;
    if (g.deg(s) == 1) has_leaf = true;
  }
  CHECK(has_hub);
  CHECK(has_leaf);
  for (size_t i = 0; i < starts.size(); ++i)
    for (size_t j = i + 1; j < starts.size(); ++j) CHECK(starts[i] != starts[j]);
}

TEST_CASE("return statistics on a single edge") {
  const ReturnStats r = return_stats(make_path(2), 0, 3, 500, 5);
  CHECK(r.pbar_v == doctest::Approx(1.0));
  CHECK(r.pbar_std_error == doctest::Approx(0.0));
  CHECK(r.R_T1 == doctest::Approx(2.0));
  CHECK(r.pi_v == doctest::Approx(0.5));
  CHECK(r.p_v == doctest::Approx(0.25));
}

TEST_CASE("return statistics match the exact visit sum on a triangle") {
  // R_{T}(1) over steps 0..2 from any K3 vertex: 1 + 0 + 1/2.
  CHECK(exact_return_sum(make_complete(3), 0, 3) == doctest::Approx(1.5).epsilon(1e-12));
  const ReturnStats r = return_stats(make_complete(3), 0, 3, 40000, 8);
  CHECK(std::abs(r.R_T1 - 1.5) < 3 * r.r_std_error + 1e-9);
  CHECK(std::abs(r.pbar_v - 0.5) < 3 * r.pbar_std_error + 1e-9);
}

TEST_CASE("exact visit sums match simulation on an irregular graph") {
  const IntersectionGraph g = random_connected(30, 21);
  const double want = exact_return_sum(g, 4, 20);
  const ReturnStats r = return_stats(g, 4, 20, 60000, 13);
  CHECK(std::abs(r.R_T1 - want) < 3.5 * r.r_std_error + 1e-9);
}

TEST_CASE("exact visit sums guard their domain") {
  CHECK_THROWS_AS(exact_return_sum(make_cycle(2001), 0, 5), capacity_error);
  CHECK_THROWS_AS(exact_return_sum(make_cycle(4), 0, 0), validation_error);
  CHECK_THROWS_AS(return_stats(make_cycle(4), 0, 1, 100, 1), validation_error);
}

TEST_CASE("mixing times on reference graphs") {
  const MixingResult k4 = mixing_time_capped(make_complete(4), 0.1, 100);
  CHECK(k4.converged);
  CHECK(k4.T == 2);
  CHECK_FALSE(k4.estimate);

  const MixingResult c5 = mixing_time_capped(make_cycle(5), 1e-3, 100);
  CHECK(c5.converged);
  CHECK(c5.T == 29);

  CHECK(mixing_time(make_complete(4), 0.1) == 2);
  CHECK(mixing_time(make_cycle(5), 1e-3) == 29);
}

TEST_CASE("two-periodic chains never mix") {
  const MixingResult r = mixing_time_capped(make_path(2), 0.01, 50);
  CHECK_FALSE(r.converged);
  CHECK(r.T == 50);
  CHECK_THROWS_AS(mixing_time(make_path(2), 0.01), capacity_error);
}

TEST_CASE("default horizon is the capped mixing time") {
  const HorizonResult c5 = default_horizon(make_cycle(5));
  CHECK_FALSE(c5.capped);
  CHECK(c5.T == 19);  // eps = 5^{-3}, reached before the cap

  const HorizonResult edge = default_horizon(make_path(2));
  CHECK(edge.capped);
  CHECK(edge.T == 20);  // 20 ceil(ln 2)
}

TEST_CASE("long-run visit frequencies match the stationary law") {
  const IntersectionGraph g = random_connected(12, 4);
  std::vector<uint64_t> visits(g.n, 0);
  RngStream stream(6, StreamPurpose::return_trials, 123);
  uint32_t pos = 0;
  const uint64_t steps = 1000000;
  for (uint64_t s = 0; s < steps; ++s) {
    pos = g.adj[pos][stream.next_below(g.deg(pos))];
    ++visits[pos];
  }
  for (uint32_t v = 0; v < g.n; ++v) {
    const double pi =
        static_cast<double>(g.deg(v)) / (2.0 * static_cast<double>(g.edge_count));
    CHECK(std::abs(static_cast<double>(visits[v]) / steps - pi) < 0.01);
  }
}

TEST_CASE("unvisit probabilities on the tetrahedron") {
  const IntersectionGraph k4 = make_complete(4);
  // Window that ends before observation starts: certainly unvisited.
  CHECK(unvisit_probability(k4, 0, 5, 4, 200, 1) == doctest::Approx(1.0));

  // Exact values for T = 3 (uniform start, visits count from step 3 on).
  const double u13 = unvisit_probability(k4, 0, 3, 13, 400000, 11);
  const double u23 = unvisit_probability(k4, 0, 3, 23, 400000, 11);
  const double se13 = std::sqrt(0.013006147 * (1 - 0.013006147) / 400000);
  const double se23 = std::sqrt(0.000225546 * (1 - 0.000225546) / 400000);
  CHECK(std::abs(u13 - 0.013006147) < 4 * se13);
  CHECK(std::abs(u23 - 0.000225546) < 4 * se23);

  // Far beyond the relaxation time the probability is negligible.
  CHECK(unvisit_probability(k4, 0, 3, 10003, 2000, 3) < 1e-3);
}

TEST_CASE("unvisit profiles are coupled and monotone") {
  const IntersectionGraph g = random_connected(25, 14);
  const std::vector<uint64_t> ts{40, 10, 160, 80, 20};
  const std::vector<double> prof = unvisit_profile(g, 3, 5, ts, 20000, 17);
  REQUIRE(prof.size() == ts.size());
  // Re-order by window end: survival must be non-increasing.
  std::vector<std::pair<uint64_t, double>> by_t;
  for (size_t i = 0; i < ts.size(); ++i) by_t.emplace_back(ts[i], prof[i]);
  std::sort(by_t.begin(), by_t.end());
  for (size_t i = 1; i < by_t.size(); ++i) CHECK(by_t[i].second <= by_t[i - 1].second);
  // Single-t call with the same seed reproduces the profile entry exactly.
  CHECK(unvisit_probability(g, 3, 5, 40, 20000, 17) == doctest::Approx(prof[0]));
}

TEST_CASE("avoiding two vertices is harder than avoiding one") {
  const IntersectionGraph g = random_connected(50, 8);
  const double joint = joint_unvisit_probability(g, 2, 40, 4, 120, 30000, 19);
  const double single_x = unvisit_probability(g, 2, 4, 120, 30000, 19);
  const double single_y = unvisit_probability(g, 40, 4, 120, 30000, 19);
  // Identical trajectories via the shared seed: the inequality is pathwise.
  CHECK(joint <= single_x + 1e-12);
  CHECK(joint <= single_y + 1e-12);
}

TEST_CASE("the unvisit predictor is a clean geometric law") {
  CHECK(unvisit_predictor(0.0, 100) == doctest::Approx(1.0));
  CHECK(unvisit_predictor(0.5, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(unvisit_predictor(1e-4, 10000) ==
        doctest::Approx(std::exp(-10000.0 * std::log1p(1e-4))).epsilon(1e-12));
}

TEST_CASE("vertex identification on a long cycle") {
  const IntersectionGraph c400 = make_cycle(400);
  const MergedGraph mg = merge_vertices(c400, 0, 200);
  CHECK(mg.graph.n == 399);
  CHECK(mg.graph.edge_count == 400);
  CHECK(mg.merged == 0);
  CHECK(mg.graph.deg(0) == 4);  // degree adds up
  CHECK(mg.graph.adj[0] == std::vector<uint32_t>{1, 199, 200, 398});
  CHECK(mg.map_to_merged(0) == 0);
  CHECK(mg.map_to_merged(200) == 0);
  CHECK(mg.map_to_merged(199) == 199);
  CHECK(mg.map_to_merged(201) == 200);
  CHECK(mg.map_to_merged(399) == 398);

  uint64_t degree_sum = 0;
  for (uint32_t v = 0; v < mg.graph.n; ++v) degree_sum += mg.graph.deg(v);
  CHECK(degree_sum == 2 * mg.graph.edge_count);

  CHECK_THROWS_AS(merge_vertices(c400, 0, 10), validation_error);
  CHECK_THROWS_AS(merge_vertices(c400, 5, 5), validation_error);
}

TEST_CASE("merged vertex keeps the single-vertex return probability") {
  // Within a horizon far smaller than the arm length, each of the merged
  // vertex's four arms behaves like either original vertex's two arms, so the
  // return probabilities agree (the degree-weighted average of equal values).
  const IntersectionGraph c400 = make_cycle(400);
  const MergedGraph mg = merge_vertices(c400, 0, 200);
  const ReturnStats merged = return_stats(mg.graph, 0, 40, 40000, 23);
  const ReturnStats original = return_stats(c400, 0, 40, 40000, 29);
  const double joint = std::hypot(merged.pbar_std_error, original.pbar_std_error);
  CHECK(std::abs(merged.pbar_v - original.pbar_v) < 3 * joint);
}

TEST_CASE("far pair sampling") {
  const IntersectionGraph c400 = make_cycle(400);
  const auto pair = sample_far_pair(c400, 20, 5, 3);
  REQUIRE(pair.has_value());
  const uint32_t d = bfs_distance(c400, pair->first, pair->second, 1000);
  CHECK(d >= 20);

  CHECK_FALSE(sample_far_pair(make_complete(4), 20, 5, 3).has_value());

  const auto far = approx_farthest_pair(c400, 3, 1);
  CHECK(far.second == 200);
  const auto path_far = approx_farthest_pair(make_path(50), 2, 1);
  CHECK(path_far.second == 49);
}
