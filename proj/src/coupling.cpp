#include "cpipe/coupling.hpp"

#include "cpipe/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cpipe {

namespace {

void check_profile(const std::vector<double>& R0, std::size_t n) {
  if (R0.size() != n) throw ConfigError("wall rest profile does not match the grid", "coupling");
  for (double r : R0) {
    if (!(r > 0.0)) throw ConfigError("wall rest radius must be positive", "coupling");
  }
}

void check_elastic(const ElasticLaw& law) {
  if (!(law.E > 0.0) || !(law.h0 > 0.0)) throw ConfigError("elastic law needs E > 0 and h0 > 0", "coupling");
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double p0_residual(const WallState& w, const P0Data& p) {
  std::vector<double> a(w.R.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::pow(w.R[i], 4);
  return flux_bvp_residual(w.grid, a, p.source, {}, p.p0);
}

// Fixed point on R for the elastic law. Rt = (R - R_old)/dt, or 0 when dt <= 0.
StepResult elastic_fixed_point(const UniformGrid& grid, const ElasticLaw& law, const std::vector<double>& R_old,
                               double t, double dt, const FluidParams& fluid, const PressureBC& bc,
                               const std::vector<double>* previous_dp0, const CouplingOptions& opt) {
  check_elastic(law);
  check_profile(law.R0, grid.size());
  const std::size_t n = grid.size();
  std::vector<double> R = R_old;
  double omega = opt.relaxation;
  StepResult out;
  for (int k = 1; k <= opt.max_iterations; ++k) {
    std::vector<double> Rt(n, 0.0);
    if (dt > 0.0) {
      for (std::size_t i = 0; i < n; ++i) Rt[i] = (R[i] - R_old[i]) / dt;
    }
    WallState w = WallState::from_radius(grid, R, Rt, t);
    P0Data p0 = solve_p0(w, fluid, bc, dt > 0.0 ? previous_dp0 : nullptr, dt);
    const std::vector<double> target = apply_wall_law(law, p0.p0);
    const double res = max_abs_diff(target, R) / w.max_radius();
    out.residual_history.push_back(res);
    if (res <= opt.tolerance) {
      out.iterations = k;
      out.law_residual = law_residual(law, w.R, p0.p0);
      out.bvp_residual = p0_residual(w, p0);
      out.wall = std::move(w);
      out.p0 = std::move(p0);
      return out;
    }
    const auto& h = out.residual_history;
    if (k > 3 && h[h.size() - 1] > h[h.size() - 2]) omega *= 0.5;
    for (std::size_t i = 0; i < n; ++i) R[i] += omega * (target[i] - R[i]);
  }
  throw CouplingError("wall coupling did not converge in " + std::to_string(opt.max_iterations) +
                          " iterations (last residual " + std::to_string(out.residual_history.back()) + ")",
                      out.residual_history);
}

}  // namespace

std::string law_name(const WallLaw& law) {
  switch (law.index()) {
    case 0: return "rigid";
    case 1: return "elastic";
    default: return "prescribed";
  }
}

std::vector<double> apply_wall_law(const ElasticLaw& law, const std::vector<double>& p0) {
  check_elastic(law);
  if (p0.size() != law.R0.size()) throw ConfigError("pressure and rest profile sizes differ", "coupling");
  std::vector<double> R(p0.size());
  for (std::size_t i = 0; i < R.size(); ++i) {
    const double r0 = law.R0[i];
    R[i] = r0 + r0 * r0 / (law.E * law.h0) * (p0[i] - law.pe);
    if (!(R[i] > 0.0)) {
      throw CouplingError("wall collapse: elastic law gives R = " + std::to_string(R[i]) + " at node " +
                              std::to_string(i),
                          {});
    }
  }
  return R;
}

double law_residual(const ElasticLaw& law, const std::vector<double>& R, const std::vector<double>& p0) {
  double m = 0.0, rmax = 0.0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    const double r0 = law.R0[i];
    m = std::max(m, std::abs(R[i] - r0 - r0 * r0 / (law.E * law.h0) * (p0[i] - law.pe)));
    rmax = std::max(rmax, std::abs(R[i]));
  }
  return m / rmax;
}

StepResult initial_state(const UniformGrid& grid, const WallLaw& law, const FluidParams& fluid,
                         const PressureBC& bc, const CouplingOptions& options) {
  if (const auto* el = std::get_if<ElasticLaw>(&law)) {
    return elastic_fixed_point(grid, *el, el->R0, 0.0, 0.0, fluid, bc, nullptr, options);
  }
  StepResult out;
  std::vector<double> R0, Rt(grid.size(), 0.0);
  if (const auto* rl = std::get_if<RigidLaw>(&law)) {
    R0 = rl->R0;
  } else {
    const auto& pl = std::get<PrescribedLaw>(law);
    R0 = pl.R0;
    for (std::size_t i = 0; i < R0.size(); ++i) Rt[i] = pl.rate * R0[i];
  }
  check_profile(R0, grid.size());
  out.wall = WallState::from_radius(grid, R0, Rt, 0.0);
  out.p0 = solve_p0(out.wall, fluid, bc);
  out.iterations = 1;
  out.residual_history = {0.0};
  out.bvp_residual = p0_residual(out.wall, out.p0);
  return out;
}

StepResult advance_time_step(const WallState& state, const WallLaw& law, const FluidParams& fluid,
                             const PressureBC& bc, double dt, const std::vector<double>* previous_dp0,
                             const CouplingOptions& options) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive", "coupling");
  const double t = state.t + dt;
  if (const auto* el = std::get_if<ElasticLaw>(&law)) {
    return elastic_fixed_point(state.grid, *el, state.R, t, dt, fluid, bc, previous_dp0, options);
  }
  StepResult out;
  if (std::holds_alternative<RigidLaw>(law)) {
    out.wall = WallState::rigid(state.grid, state.R, t);
  } else {
    const auto& pl = std::get<PrescribedLaw>(law);
    check_profile(pl.R0, state.grid.size());
    std::vector<double> R(pl.R0.size()), Rt(pl.R0.size());
    for (std::size_t i = 0; i < R.size(); ++i) {
      R[i] = pl.R0[i] * (1.0 + pl.rate * t);
      Rt[i] = pl.R0[i] * pl.rate;
    }
    out.wall = WallState::from_radius(state.grid, std::move(R), std::move(Rt), t);
  }
  out.p0 = solve_p0(out.wall, fluid, bc, previous_dp0, dt);
  out.iterations = 1;
  out.residual_history = {0.0};
  out.bvp_residual = p0_residual(out.wall, out.p0);
  return out;
}

}  // namespace cpipe
