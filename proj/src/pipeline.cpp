#include "cpipe/pipeline.hpp"

#include "cpipe/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cpipe {

CenterCurve build_curve(const RunConfig& cfg) {
  if (cfg.geometry_kind == "straight") return CenterCurve::straight(cfg.length);
  if (cfg.geometry_kind == "arc") return CenterCurve::circular_arc(cfg.arc_radius, cfg.length);
  if (cfg.geometry_kind == "helix") return CenterCurve::helix(cfg.helix_a, cfg.helix_b, cfg.length);
  CenterCurve c = CenterCurve::from_csv(cfg.samples);
  if (c.length() + 1e-12 < cfg.length) {
    throw ConfigError(cfg.source + ": sampled curve is shorter than geometry.length", "geometry");
  }
  return c;
}

WallLaw build_law(const RunConfig& cfg, const UniformGrid& grid) {
  const auto R0 = cfg.rest_profile(grid.nodes());
  if (cfg.wall_law == "elastic") return ElasticLaw{cfg.E, cfg.h0, R0, cfg.pe};
  if (cfg.wall_law == "prescribed") return PrescribedLaw{R0, cfg.rate};
  return RigidLaw{R0};
}

namespace {

LevelSummary summarize(const StepResult& s) {
  LevelSummary l;
  l.t = s.wall.t;
  l.iterations = s.iterations;
  l.coupling_residual = s.residual_history.empty() ? 0.0 : s.residual_history.back();
  l.law_residual = s.law_residual;
  l.bvp_residual = s.bvp_residual;
  l.min_R = *std::min_element(s.wall.R.begin(), s.wall.R.end());
  l.max_R = *std::max_element(s.wall.R.begin(), s.wall.R.end());
  return l;
}

}  // namespace

RunResult run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  RunResult run;
  run.config = cfg;
  run.curve = build_curve(cfg);
  const UniformGrid grid(cfg.length, cfg.n_s1);
  const WallLaw law = build_law(cfg, grid);

  StepResult state = initial_state(grid, law, cfg.fluid, cfg.bc, cfg.coupling);
  run.history.push_back(summarize(state));
  std::vector<double> previous_dp0;
  double dt_last = 0.0;
  if (!cfg.steady) {
    const auto steps = static_cast<std::size_t>(std::llround(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
    for (std::size_t k = 0; k < steps; ++k) {
      const double dt = std::min(cfg.dt, cfg.t_end - state.wall.t);
      previous_dp0 = state.p0.dp0;
      state = advance_time_step(state.wall, law, cfg.fluid, cfg.bc, dt, &previous_dp0, cfg.coupling);
      run.history.push_back(summarize(state));
      dt_last = dt;
    }
  }
  run.wall = state.wall;
  const bool have_previous = !previous_dp0.empty();
  run.pressures = solve_pressures(run.wall, run.curve, cfg.fluid, cfg.body, cfg.bc, cfg.steady,
                                  have_previous ? &previous_dp0 : nullptr, dt_last);

  const TubeMap map(run.curve, run.wall, cfg.epsilon);
  run.invertibility_bound = map.invertibility_bound();
  run.map_warning = map.warning();

  run.stations.reserve(grid.size());
  run.fields.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    run.stations.push_back(station_at(run.wall, run.curve, cfg.fluid, cfg.body, run.pressures, i));
    run.fields.push_back(compute_fields(run.stations.back(), cfg.order));
  }
  run.flow = flow_rates(grid.nodes(), run.fields, run.wall.R);

  if (cfg.stations.empty()) {
    run.output_nodes.push_back(grid.size() / 2);
  } else {
    for (double s : cfg.stations) run.output_nodes.push_back(grid.nearest(s));
  }
  return run;
}

VerificationSummary verify_run(const RunResult& run) {
  VerificationSummary v;
  v.conservation = check_mass_conservation(run.wall, run.config.fluid, run.pressures);
  v.compatibility = check_compatibility(run.stations);
  for (const auto& l : run.history) {
    v.max_law_residual = std::max(v.max_law_residual, l.law_residual);
    v.max_bvp_residual = std::max(v.max_bvp_residual, l.bvp_residual);
  }
  auto fail = [&](const std::string& what, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.3e)", value);
    v.failures.push_back(what + buf);
  };
  const auto& c = v.conservation;
  if (c.max_r0 > 1e-8 * std::max(1.0, c.scale0)) fail("Q0 conservation", c.max_r0);
  if (c.max_r1 > 1e-10 * std::max(1.0, std::abs(run.pressures.p1.flux))) fail("Q1 conservation", c.max_r1);
  double q2scale = 1.0;
  for (double g : run.pressures.p02.bracket) q2scale = std::max(q2scale, std::abs(g));
  if (c.max_r2 > 1e-8 * q2scale) fail("Q2 conservation", c.max_r2);
  const auto& k = v.compatibility;
  if (k.max_u1 > 1e-8 * std::max(1.0, k.scale_u1)) fail("U1 compatibility", k.max_u1);
  if (run.config.order >= 2 && k.max_u2 > 1e-10 * std::max(1.0, k.scale_u2)) fail("U2 compatibility", k.max_u2);
  if (v.max_law_residual > 1e-9) fail("wall law residual", v.max_law_residual);
  if (v.max_bvp_residual > 1e-8) fail("p0 boundary value residual", v.max_bvp_residual);
  for (std::size_t node : run.output_nodes) {
    auto items = grouped_order_residuals(run.stations[node]);
    for (const auto& it : items) {
      if (!it.passes(1e-9)) fail("residual " + it.problem + " " + it.part + " at node " + std::to_string(node), it.max_abs);
    }
    v.residuals.emplace_back(node, std::move(items));
  }
  return v;
}

}  // namespace cpipe
