#include <cmath>
#include <cstdint>
#include <cstdio>
#include <queue>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rigwalk/corpus.hpp"
#include "rigwalk/errors.hpp"
#include "rigwalk/genrand.hpp"
#include "rigwalk/model.hpp"
#include "rigwalk/report.hpp"
#include "rigwalk/theory.hpp"
#include "rigwalk/verify.hpp"
#include "rigwalk/walk.hpp"

namespace {

using namespace rigwalk;

int g_exit_code = 0;

struct ParamArgs {
  uint32_t n = 1000;
  double c = 0.0;
  double np = 0.0;
  uint64_t m = 0;
  double p = 0.0;
  uint64_t seed = 1;
};

void add_param_options(CLI::App* cmd, ParamArgs& a) {
  cmd->add_option("-n,--vertices", a.n, "vertex count");
  cmd->add_option("-c,--multiplier", a.c, "connectivity multiplier (c > 1)");
  cmd->add_option("--np", a.np, "target mean link count per vertex (n*p)");
  cmd->add_option("-m,--attributes", a.m, "attribute count (with -p)");
  cmd->add_option("-p,--link-prob", a.p, "per-link probability (with -m)");
  cmd->add_option("--seed", a.seed, "master seed");
}

ParamSetup resolve(const ParamArgs& a) {
  const bool direct = a.m > 0 || a.p > 0;
  const bool targeted = a.c > 0 || a.np > 0;
  if (direct && targeted)
    throw validation_error("give either (-c, --np) or (-m, -p), not both");
  if (direct) {
    if (a.m == 0 || a.p <= 0)
      throw validation_error("direct parameters need both -m and -p");
    return setup_from_nmp(a.n, a.m, a.p, a.seed);
  }
  if (targeted) {
    if (a.c <= 0 || a.np <= 0)
      throw validation_error("targeted parameters need both -c and --np");
    return derive_params(a.n, a.c, a.np, a.seed);
  }
  throw validation_error("specify the model as (-c, --np) or as (-m, -p)");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    save_text(out_path, text);
}

bool connected(const IntersectionGraph& g) {
  if (g.n == 0) return false;
  std::vector<uint8_t> seen(g.n, 0);
  std::queue<uint32_t> queue;
  seen[0] = 1;
  queue.push(0);
  uint32_t reached = 1;
  while (!queue.empty()) {
    const uint32_t v = queue.front();
    queue.pop();
    for (uint32_t u : g.adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        queue.push(u);
      }
  }
  return reached == g.n;
}

void run_gen(const ParamArgs& a, const std::string& prefix) {
  const ParamSetup setup = resolve(a);
  const BipartiteGraph b = sample_bipartite(setup.params);
  std::string warning;
  const IntersectionGraph g = intersection_of(b, &warning);
  save_text(prefix + ".b.txt", to_rig(b));
  save_text(prefix + ".ig.txt", to_ig(g));
  if (!warning.empty()) std::fprintf(stderr, "note: %s\n", warning.c_str());
  std::fputs(graph_summary_json(setup, b, g).c_str(), stdout);
}

void run_predict(const ParamArgs& a, const std::string& out,
                 const std::string& dbar_path) {
  const ParamSetup setup = resolve(a);
  const TheoryReport report = theory_report(setup.derived);
  emit(theory_report_json(setup, report), out);
  if (!dbar_path.empty()) save_text(dbar_path, dbar_csv(setup.derived));
}

void run_simulate(const ParamArgs& a, const std::string& load_ig, uint64_t trials,
                  uint32_t sampled_starts, bool exact, int32_t return_vertex,
                  uint64_t window_t, double eps, const std::string& per_trial_path,
                  const std::string& out) {
  IntersectionGraph g;
  ParamSetup setup;
  bool have_params = false;
  if (!load_ig.empty()) {
    g = from_ig(load_text(load_ig));
  } else {
    setup = resolve(a);
    have_params = true;
    const BipartiteGraph b = sample_bipartite(setup.params);
    g = intersection_of(b);
  }

  if (exact) {
    std::vector<std::string> names;
    std::vector<double> values;
    for (uint32_t v = 0; v < g.n; ++v) {
      char name[16];
      std::snprintf(name, sizeof(name), "v%u", v);
      names.push_back(name);
      values.push_back(exact_cover_time(g, v));
    }
    emit(oracle_report_json(names, values, {}, {}), out);
    return;
  }

  const std::vector<uint32_t> starts = default_start_set(g, sampled_starts, a.seed);
  const CoverEstimate est =
      estimate_cover_time(g, starts, trials, a.seed, !per_trial_path.empty());

  SimulationContext ctx;
  if (have_params) {
    ctx.have_prediction = true;
    ctx.prediction = cover_times(setup.derived);
    if (ctx.prediction.principal > 0)
      ctx.principal_ratio = est.c_empirical / ctx.prediction.principal;
  }
  if (return_vertex >= 0) {
    const uint32_t v = static_cast<uint32_t>(return_vertex);
    uint32_t horizon = 0;
    bool capped = false;
    if (eps > 0) {
      const uint32_t cap = 20u * static_cast<uint32_t>(
                                     std::ceil(std::log(static_cast<double>(g.n))));
      const MixingResult mr = mixing_time_capped(g, eps, cap);
      horizon = mr.converged ? mr.T : cap;
      capped = !mr.converged;
    } else {
      const HorizonResult h = default_horizon(g);
      horizon = h.T;
      capped = h.capped;
    }
    if (horizon < 2) horizon = 2;
    ctx.have_return = true;
    ctx.horizon = horizon;
    ctx.horizon_capped = capped;
    ctx.ret = return_stats(g, v, horizon, 4000, a.seed);
    if (window_t > 0) {
      ctx.unvisit_t = window_t;
      ctx.unvisit_trials = 4000;
      ctx.unvisit_empirical =
          unvisit_probability(g, v, horizon, window_t, ctx.unvisit_trials, a.seed);
      ctx.unvisit_predicted = unvisit_predictor(ctx.ret.p_v, window_t);
    }
  }
  emit(walk_report_json(a.seed, est, ctx), out);
  if (!per_trial_path.empty()) save_text(per_trial_path, per_trial_csv(est));
}

void run_verify(const ParamArgs& a, uint32_t seeds, double a_star, double min_pass_rate,
                const std::string& out) {
  if (seeds <= 1) {
    const ParamSetup setup = resolve(a);
    const BipartiteGraph b = sample_bipartite(setup.params);
    const IntersectionGraph g = intersection_of(b);
    const PropertyReport report = verify_all(b, g, a_star);
    emit(property_report_json(setup, report), out);
    if (min_pass_rate > 0 && !report.all_pass) g_exit_code = 4;
    return;
  }

  std::vector<std::string> names;
  std::vector<uint32_t> passes;
  for (uint32_t i = 0; i < seeds; ++i) {
    ParamArgs ai = a;
    ai.seed = a.seed + i;
    const ParamSetup setup = resolve(ai);
    const BipartiteGraph b = sample_bipartite(setup.params);
    const IntersectionGraph g = intersection_of(b);
    const PropertyReport report = verify_all(b, g, a_star);
    if (names.empty()) {
      for (const PropertyEntry& e : report.entries) names.push_back(e.name);
      passes.assign(names.size(), 0);
    }
    for (size_t k = 0; k < report.entries.size(); ++k)
      passes[k] += report.entries[k].pass ? 1 : 0;
  }
  emit(frequency_csv(names, passes, seeds), out);
  if (min_pass_rate > 0)
    for (uint32_t count : passes)
      if (static_cast<double>(count) / seeds < min_pass_rate) {
        g_exit_code = 4;
        break;
      }
}

void run_compare(const ParamArgs& a, uint32_t pairs, uint64_t trials,
                 const std::string& out) {
  std::vector<uint64_t> seeds;
  std::vector<double> cover_rig, cover_er;
  uint32_t rig_wins = 0;
  for (uint32_t i = 0; i < pairs; ++i) {
    const uint64_t pair_seed = a.seed + i;
    // A disconnected sample cannot be covered; retry on derived sub-seeds.
    auto sub_seed = [&](uint32_t attempt) {
      return pair_seed ^ (attempt * 0x9e3779b97f4a7c15ull);
    };

    ParamArgs ai = a;
    double rig_value = -1.0, er_value = -1.0;
    double q = 0.0;
    for (uint32_t attempt = 0; attempt < 4 && rig_value < 0; ++attempt) {
      ai.seed = sub_seed(attempt);
      const ParamSetup setup = resolve(ai);
      const BipartiteGraph b = sample_bipartite(setup.params);
      const IntersectionGraph g = intersection_of(b);
      if (!connected(g)) continue;
      q = setup.derived.pI;
      const auto starts = default_start_set(g, 0, ai.seed);
      rig_value = estimate_cover_time(g, starts, trials, ai.seed).c_empirical;
    }
    for (uint32_t attempt = 0; attempt < 4 && rig_value >= 0 && er_value < 0;
         ++attempt) {
      const uint64_t s = sub_seed(attempt);
      const IntersectionGraph g = sample_er(a.n, q, s);
      if (!connected(g)) continue;
      const auto starts = default_start_set(g, 0, s);
      er_value = estimate_cover_time(g, starts, trials, s).c_empirical;
    }
    if (rig_value < 0 || er_value < 0) {
      std::fprintf(stderr, "note: seed %llu skipped (no connected sample in 4 tries)\n",
                   static_cast<unsigned long long>(pair_seed));
      continue;
    }
    seeds.push_back(pair_seed);
    cover_rig.push_back(rig_value);
    cover_er.push_back(er_value);
    if (rig_value > er_value) ++rig_wins;
  }
  emit(compare_csv(seeds, cover_rig, cover_er), out);
  std::fprintf(stderr, "slower-cover count: %u of %zu pairs\n", rig_wins, seeds.size());
}

void run_oracle(uint64_t seed, uint64_t trials, const std::string& out) {
  std::vector<std::string> names{"path4",  "cycle4",  "cycle8", "complete4",
                                 "star5",  "complete3", "random8"};
  std::vector<IntersectionGraph> graphs;
  graphs.push_back(make_path(4));
  graphs.push_back(make_cycle(4));
  graphs.push_back(make_cycle(8));
  graphs.push_back(make_complete(4));
  graphs.push_back(make_star(5));
  graphs.push_back(make_complete(3));
  graphs.push_back(random_connected(8, seed));

  std::vector<double> exact_values, estimates, std_errors;
  for (const auto& g : graphs) exact_values.push_back(exact_cover_time(g, 0));
  if (trials > 0)
    for (const auto& g : graphs) {
      const CoverEstimate est = estimate_cover_time(g, {0}, trials, seed);
      estimates.push_back(est.per_start[0].mean_cover_steps);
      std_errors.push_back(est.per_start[0].std_error);
    }
  emit(oracle_report_json(names, exact_values, estimates, std_errors), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random intersection graphs: generation, walk simulation, and checks"};
  app.require_subcommand(1);

  ParamArgs gen_args;
  std::string gen_prefix = "graph";
  CLI::App* gen = app.add_subcommand("gen", "sample a graph pair and write it to disk");
  add_param_options(gen, gen_args);
  gen->add_option("-o,--output", gen_prefix, "output path prefix");

  ParamArgs predict_args;
  std::string predict_out, predict_dbar;
  CLI::App* predict = app.add_subcommand("predict", "analytic report for a parameter set");
  add_param_options(predict, predict_args);
  predict->add_option("-o,--output", predict_out, "write the JSON report here");
  predict->add_option("--dbar-csv", predict_dbar, "also write the degree table as CSV");

  ParamArgs sim_args;
  std::string sim_load, sim_out, sim_per_trial;
  uint64_t sim_trials = 20, sim_t = 0;
  uint32_t sim_starts = 6;
  int32_t sim_return = -1;
  double sim_eps = 0.0;
  bool sim_exact = false;
  CLI::App* simulate = app.add_subcommand("simulate", "estimate cover times by simulation");
  add_param_options(simulate, sim_args);
  simulate->add_option("--load-ig", sim_load, "walk a graph loaded from an ig-v1 file");
  simulate->add_option("--trials", sim_trials, "trials per start vertex");
  simulate->add_option("--starts", sim_starts, "extra sampled start vertices");
  simulate->add_flag("--exact", sim_exact, "exact expected cover times (n <= 12)");
  simulate->add_option("--return", sim_return, "also report return statistics for this vertex");
  simulate->add_option("--t", sim_t, "unvisit window end (with --return)");
  simulate->add_option("--eps", sim_eps, "accuracy for the mixing-based horizon");
  simulate->add_option("--per-trial", sim_per_trial, "write per-trial step counts as CSV");
  simulate->add_option("-o,--output", sim_out, "write the JSON report here");

  ParamArgs verify_args;
  std::string verify_out;
  uint32_t verify_seeds = 1;
  double verify_a_star = 0.25, verify_min_rate = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "check structural properties of samples");
  add_param_options(verify, verify_args);
  verify->add_option("--seeds", verify_seeds, "number of consecutive seeds to sample");
  verify->add_option("--a-star", verify_a_star, "locality exponent for the layer checks");
  verify->add_option("--min-pass-rate", verify_min_rate,
                     "exit 4 if any property passes less often than this");
  verify->add_option("-o,--output", verify_out, "write the report here");

  ParamArgs compare_args;
  std::string compare_out;
  uint32_t compare_pairs = 10;
  uint64_t compare_trials = 10;
  CLI::App* compare =
      app.add_subcommand("compare", "cover times against density-matched uniform graphs");
  add_param_options(compare, compare_args);
  compare->add_option("--seeds", compare_pairs, "number of sample pairs");
  compare->add_option("--trials", compare_trials, "trials per start vertex");
  compare->add_option("-o,--output", compare_out, "write the CSV here");

  std::string figure1_out;
  CLI::App* figure1 = app.add_subcommand("figure1", "rate-constant comparison curve as CSV");
  figure1->add_option("-o,--output", figure1_out, "write the CSV here");

  std::string oracle_out;
  uint64_t oracle_seed = 1, oracle_trials = 0;
  CLI::App* oracle =
      app.add_subcommand("oracle", "exact cover times for a small named corpus");
  oracle->add_option("--seed", oracle_seed, "seed for the random member");
  oracle->add_option("--trials", oracle_trials, "also estimate by simulation");
  oracle->add_option("-o,--output", oracle_out, "write the JSON here");

  gen->callback([&] { run_gen(gen_args, gen_prefix); });
  predict->callback([&] { run_predict(predict_args, predict_out, predict_dbar); });
  simulate->callback([&] {
    run_simulate(sim_args, sim_load, sim_trials, sim_starts, sim_exact, sim_return,
                 sim_t, sim_eps, sim_per_trial, sim_out);
  });
  verify->callback([&] {
    run_verify(verify_args, verify_seeds, verify_a_star, verify_min_rate, verify_out);
  });
  compare->callback(
      [&] { run_compare(compare_args, compare_pairs, compare_trials, compare_out); });
  figure1->callback([&] { emit(figure1_csv(), figure1_out); });
  oracle->callback([&] { run_oracle(oracle_seed, oracle_trials, oracle_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const capacity_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return g_exit_code;
}
