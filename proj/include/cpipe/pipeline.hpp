#ifndef CPIPE_PIPELINE_HPP
#define CPIPE_PIPELINE_HPP

#include "cpipe/config.hpp"
#include "cpipe/coupling.hpp"
#include "cpipe/expansion.hpp"
#include "cpipe/geometry.hpp"
#include "cpipe/verify.hpp"

#include <string>
#include <vector>

namespace cpipe {

struct LevelSummary {
  double t = 0.0;
  int iterations = 0;
  double coupling_residual = 0.0;  // last fixed-point update
  double law_residual = 0.0;
  double bvp_residual = 0.0;
  double min_R = 0.0, max_R = 0.0;
};

/// Everything a run produces at the final time level.
struct RunResult {
  RunConfig config;
  CenterCurve curve;
  WallState wall;
  PressureExpansion pressures;
  std::vector<Station<double>> stations;        // one per s1 node
  std::vector<ExpansionFields<double>> fields;  // one per s1 node
  FlowRates flow;
  std::vector<LevelSummary> history;
  std::vector<std::size_t> output_nodes;
  double invertibility_bound = 0.0;
  bool map_warning = false;
};

struct VerificationSummary {
  ConservationReport conservation;
  CompatibilityReport compatibility;
  std::vector<std::pair<std::size_t, std::vector<ResidualItem>>> residuals;  // per output node
  double max_law_residual = 0.0;
  double max_bvp_residual = 0.0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

CenterCurve build_curve(const RunConfig& cfg);
WallLaw build_law(const RunConfig& cfg, const UniformGrid& grid);

RunResult run_pipeline(const RunConfig& cfg);
VerificationSummary verify_run(const RunResult& run);

}  // namespace cpipe

#endif
