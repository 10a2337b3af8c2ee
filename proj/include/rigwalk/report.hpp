#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rigwalk/model.hpp"
#include "rigwalk/theory.hpp"
#include "rigwalk/verify.hpp"
#include "rigwalk/walk.hpp"

namespace rigwalk {

inline constexpr const char* kReportVersion = "report-v1";

// Stable hex digest of a parameter set, used to tag reports.
std::string config_hash(const GraphParams& params);

// One-line JSON summary for a freshly generated graph pair.
std::string graph_summary_json(const ParamSetup& setup, const BipartiteGraph& b,
                               const IntersectionGraph& g);

// Full analytic report: derived scalars, the lambda family, cover-time
// predictions, reference-model predictions and degree-band summary.
std::string theory_report_json(const ParamSetup& setup, const TheoryReport& report,
                               int indent = 2);

struct SimulationContext {
  bool have_prediction = false;
  CoverTimes prediction;
  double principal_ratio = 0.0;  // empirical max mean / principal prediction

  // Optional per-vertex return / unvisit block.
  bool have_return = false;
  ReturnStats ret;
  uint32_t horizon = 0;
  bool horizon_capped = false;
  uint64_t unvisit_t = 0;  // 0: no unvisit sub-block
  double unvisit_empirical = 0.0;
  double unvisit_predicted = 0.0;
  uint64_t unvisit_trials = 0;
};

std::string walk_report_json(uint64_t seed, const CoverEstimate& est,
                             const SimulationContext& ctx, int indent = 2);

std::string property_report_json(const ParamSetup& setup, const PropertyReport& report,
                                 int indent = 2);

// Exact-versus-simulated cover times for the small named corpus.
std::string oracle_report_json(const std::vector<std::string>& names,
                               const std::vector<double>& exact_values,
                               const std::vector<double>& estimates,
                               const std::vector<double>& std_errors, int indent = 2);

// CSV emitters. All numeric formatting is fixed so output is byte-identical
// across runs and platforms with the same inputs.
std::string figure1_csv();
std::string dbar_csv(const DerivedQuantities& q);
std::string frequency_csv(const std::vector<std::string>& names,
                          const std::vector<uint32_t>& passes, uint64_t trials);
std::string compare_csv(const std::vector<uint64_t>& seeds,
                        const std::vector<double>& cover_rig,
                        const std::vector<double>& cover_er);
std::string per_trial_csv(const CoverEstimate& est);

}  // namespace rigwalk
