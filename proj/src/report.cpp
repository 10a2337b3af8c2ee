#include "rigwalk/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace rigwalk {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

std::string csv_num(double value) { return fmt("%.12g", value); }

ordered_json params_json(const GraphParams& params) {
  return ordered_json{{"n", params.n},
                      {"m", params.m},
                      {"p", params.p},
                      {"seed", params.seed},
                      {"hash", config_hash(params)}};
}

ordered_json derived_json(const DerivedQuantities& q) {
  return ordered_json{{"np", q.np},         {"c", q.c},
                      {"d0", q.d0},         {"d1", q.d1},
                      {"delta", q.delta},   {"kappa", q.kappa},
                      {"cbar", q.cbar},     {"pI", q.pI},
                      {"pI_hat", q.pI_hat}, {"qB_hat", q.qB_hat},
                      {"i0", q.i0},         {"k0", q.k0},
                      {"eps_n", q.eps_n}};
}

const char* l1_state_name(LambdaFamily::L1State s) {
  switch (s) {
    case LambdaFamily::L1State::defined: return "defined";
    case LambdaFamily::L1State::near_boundary: return "near_boundary";
    default: return "undefined";
  }
}

ordered_json lambda_json(const LambdaFamily& lf) {
  ordered_json j{{"lambda", lf.lambda},
                 {"lambda0", lf.lambda0},
                 {"lambda1_state", l1_state_name(lf.lambda1_state)},
                 {"a", lf.a},
                 {"A", lf.A},
                 {"eps_n", lf.eps_n},
                 {"x", lf.x},
                 {"y", lf.y}};
  if (lf.lambda1_state != LambdaFamily::L1State::undefined) {
    j["lambda1"] = lf.lambda1;
    j["y1"] = lf.y1;
  } else {
    j["lambda1"] = nullptr;
    j["y1"] = nullptr;
  }
  return j;
}

ordered_json cover_json(const CoverTimes& cover) {
  ordered_json j{{"principal", cover.principal}, {"t0", cover.t0}};
  if (cover.t1_defined)
    j["t1"] = cover.t1;
  else
    j["t1"] = nullptr;
  return j;
}

ordered_json band_json(const std::vector<uint32_t>& band) {
  ordered_json arr = ordered_json::array();
  for (uint32_t k : band) arr.push_back(k);
  return arr;
}

}  // namespace

std::string config_hash(const GraphParams& params) {
  char line[128];
  std::snprintf(line, sizeof(line), "%u %llu %.17g %llu", params.n,
                static_cast<unsigned long long>(params.m), params.p,
                static_cast<unsigned long long>(params.seed));
  uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64
  for (const char* c = line; *c; ++c) {
    h ^= static_cast<unsigned char>(*c);
    h *= 0x100000001b3ull;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
  return out;
}

std::string graph_summary_json(const ParamSetup& setup, const BipartiteGraph& b,
                               const IntersectionGraph& g) {
  uint64_t link_count = 0;
  size_t max_attr = 0;
  for (const auto& vs : b.vertices_of_attr) {
    link_count += vs.size();
    max_attr = std::max(max_attr, vs.size());
  }
  ordered_json j{{"version", kReportVersion},
                 {"kind", "graph"},
                 {"params", params_json(setup.params)},
                 {"c", setup.derived.c},
                 {"links", link_count},
                 {"largest_attribute", max_attr},
                 {"edges", g.edge_count}};
  return j.dump(2) + "\n";
}

std::string theory_report_json(const ParamSetup& setup, const TheoryReport& report,
                               int indent) {
  double dbar_sum = 0.0, dbar_max = 0.0;
  uint32_t dbar_argmax = 0;
  for (uint32_t k = 1; k < report.dbar_table.size(); ++k) {
    dbar_sum += report.dbar_table[k];
    if (report.dbar_table[k] > dbar_max) {
      dbar_max = report.dbar_table[k];
      dbar_argmax = k;
    }
  }
  ordered_json j{
      {"version", kReportVersion},
      {"kind", "predict"},
      {"params", params_json(setup.params)},
      {"derived", derived_json(setup.derived)},
      {"lambda_family", lambda_json(report.lf)},
      {"cover_prediction", cover_json(report.cover)},
      {"er_prediction_same_c", report.er_prediction_same_c},
      {"er_prediction_same_density", report.er_prediction_same_density},
      {"figure1_ratio", report.figure1_ratio},
      {"dbar_summary",
       ordered_json{{"sum", dbar_sum}, {"max", dbar_max}, {"argmax_k", dbar_argmax}}},
      {"degree_bands", ordered_json{{"K1", band_json(report.bands.K1)},
                                    {"K2", band_json(report.bands.K2)},
                                    {"K3", band_json(report.bands.K3)},
                                    {"I", band_json(report.bands.I)}}}};
  return j.dump(indent) + "\n";
}

std::string walk_report_json(uint64_t seed, const CoverEstimate& est,
                             const SimulationContext& ctx, int indent) {
  ordered_json starts = ordered_json::array();
  for (const WalkStats& s : est.per_start) {
    ordered_json quantiles = ordered_json::object();
    for (const auto& [frac, steps] : s.first_visit_quantiles)
      quantiles[fmt("%.2f", frac)] = steps;
    starts.push_back(ordered_json{{"start", s.start},
                                  {"trials", s.trials},
                                  {"mean_cover_steps", s.mean_cover_steps},
                                  {"std_error", s.std_error},
                                  {"mean_first_visit", quantiles},
                                  {"error", s.error_flag}});
  }
  ordered_json j{{"version", kReportVersion},
                 {"kind", "simulate"},
                 {"seed", seed},
                 {"per_start", starts},
                 {"c_empirical", est.c_empirical},
                 {"argmax_start", est.argmax_start}};
  if (ctx.have_prediction) {
    j["prediction"] = cover_json(ctx.prediction);
    j["principal_ratio"] = ctx.principal_ratio;
  }
  if (ctx.have_return) {
    ordered_json r{{"vertex", ctx.ret.vertex},
                   {"horizon", ctx.horizon},
                   {"horizon_capped", ctx.horizon_capped},
                   {"trials", ctx.ret.trials},
                   {"pbar", ctx.ret.pbar_v},
                   {"pbar_std_error", ctx.ret.pbar_std_error},
                   {"visit_sum", ctx.ret.R_T1},
                   {"visit_sum_std_error", ctx.ret.r_std_error},
                   {"pi", ctx.ret.pi_v},
                   {"rate", ctx.ret.p_v}};
    if (ctx.unvisit_t > 0)
      r["unvisit"] = ordered_json{{"t", ctx.unvisit_t},
                                  {"trials", ctx.unvisit_trials},
                                  {"empirical", ctx.unvisit_empirical},
                                  {"predicted", ctx.unvisit_predicted}};
    j["return_stats"] = r;
  }
  return j.dump(indent) + "\n";
}

std::string property_report_json(const ParamSetup& setup, const PropertyReport& report,
                                 int indent) {
  ordered_json entries = ordered_json::array();
  for (const PropertyEntry& e : report.entries) {
    ordered_json one{{"name", e.name},
                     {"pass", e.pass},
                     {"estimate", e.estimate},
                     {"statistic", e.statistic},
                     {"bound", e.bound},
                     {"millis", e.millis}};
    if (!e.detail.empty()) one["detail"] = e.detail;
    entries.push_back(one);
  }
  ordered_json j{{"version", kReportVersion},
                 {"kind", "verify"},
                 {"params", params_json(setup.params)},
                 {"c", setup.derived.c},
                 {"a_star", report.a_star},
                 {"all_pass", report.all_pass},
                 {"properties", entries}};
  return j.dump(indent) + "\n";
}

std::string oracle_report_json(const std::vector<std::string>& names,
                               const std::vector<double>& exact_values,
                               const std::vector<double>& estimates,
                               const std::vector<double>& std_errors, int indent) {
  ordered_json rows = ordered_json::array();
  for (size_t i = 0; i < names.size(); ++i) {
    ordered_json row{{"graph", names[i]}, {"exact", exact_values[i]}};
    if (i < estimates.size()) {
      row["estimate"] = estimates[i];
      row["std_error"] = std_errors[i];
    }
    rows.push_back(row);
  }
  ordered_json j{{"version", kReportVersion}, {"kind", "oracle"}, {"cover_times", rows}};
  return j.dump(indent) + "\n";
}

std::string figure1_csv() {
  std::string out = "np,c,lambda,er_log_term,ratio\n";
  const double cs[] = {1.1, 2.0, 10.0};
  for (double c : cs)
    for (int i = 1; i <= 600; ++i) {
      const double np = 0.05 * i;
      const double kappa = np / -std::expm1(-np);
      const double cbar = kappa * c;
      const double denom = std::log(cbar / (cbar - 1.0));
      const double ratio = figure1_ratio(np, c);
      const double lambda = ratio * denom;
      out += csv_num(np);
      out += ',';
      out += csv_num(c);
      out += ',';
      out += csv_num(lambda);
      out += ',';
      out += csv_num(denom);
      out += ',';
      out += csv_num(ratio);
      out += '\n';
    }
  return out;
}

std::string dbar_csv(const DerivedQuantities& q) {
  const DegreeBands bands = degree_bands(q);
  std::vector<char> band_of(q.delta + 1, '?');
  for (uint32_t k : bands.K1) band_of[k] = '1';
  for (uint32_t k : bands.K2) band_of[k] = '2';
  for (uint32_t k : bands.K3) band_of[k] = '3';

  std::string out = "k,i,dbar,band\n";
  char head[64];
  for (uint32_t k = 1; k <= q.delta; ++k) {
    std::snprintf(head, sizeof(head), "%u,0,", k);
    out += head;
    out += csv_num(dbar_k(k, q));
    out += ",K";
    out += band_of[k];
    out += '\n';
  }
  // Attribute-resolved rows at i = i0, covering the candidate range for I.
  const uint32_t k_hi = std::min<uint32_t>(q.k0, 2000);
  for (uint32_t k = std::max<uint32_t>(q.i0, 1); k <= k_hi; ++k) {
    const bool in_I =
        std::find(bands.I.begin(), bands.I.end(), k) != bands.I.end();
    std::snprintf(head, sizeof(head), "%u,%u,", k, q.i0);
    out += head;
    out += csv_num(dbar(k, q.i0, q));
    out += in_I ? ",I\n" : ",-\n";
  }
  return out;
}

std::string frequency_csv(const std::vector<std::string>& names,
                          const std::vector<uint32_t>& passes, uint64_t trials) {
  std::string out = "property,passes,trials\n";
  char line[160];
  for (size_t i = 0; i < names.size(); ++i) {
    std::snprintf(line, sizeof(line), "%s,%u,%llu\n", names[i].c_str(), passes[i],
                  static_cast<unsigned long long>(trials));
    out += line;
  }
  return out;
}

std::string compare_csv(const std::vector<uint64_t>& seeds,
                        const std::vector<double>& cover_rig,
                        const std::vector<double>& cover_er) {
  std::string out = "seed,cover_rig,cover_er,winner\n";
  for (size_t i = 0; i < seeds.size(); ++i) {
    char head[32];
    std::snprintf(head, sizeof(head), "%llu,",
                  static_cast<unsigned long long>(seeds[i]));
    out += head;
    out += csv_num(cover_rig[i]);
    out += ',';
    out += csv_num(cover_er[i]);
    out += ',';
    if (cover_rig[i] > cover_er[i])
      out += "rig\n";
    else if (cover_er[i] > cover_rig[i])
      out += "er\n";
    else
      out += "tie\n";
  }
  return out;
}

std::string per_trial_csv(const CoverEstimate& est) {
  std::string out = "start,trial,steps\n";
  char line[96];
  for (const WalkStats& s : est.per_start)
    for (size_t t = 0; t < s.per_trial_steps.size(); ++t) {
      std::snprintf(line, sizeof(line), "%u,%zu,%llu\n", s.start, t,
                    static_cast<unsigned long long>(s.per_trial_steps[t]));
      out += line;
    }
  return out;
}

}  // namespace rigwalk
