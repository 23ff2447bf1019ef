#ifndef CPIPE_COUPLING_HPP
#define CPIPE_COUPLING_HPP

#include "cpipe/pressure.hpp"
#include "cpipe/wall.hpp"

#include <string>
#include <variant>
#include <vector>

namespace cpipe {

struct RigidLaw {
  std::vector<double> R0;
};

/// p0 - pe = (E h0 / R0^2) (R - R0)
struct ElasticLaw {
  double E = 1.0;
  double h0 = 1.0;
  std::vector<double> R0;
  double pe = 0.0;
};

/// Kinematically driven wall R = R0 (1 + rate t).
struct PrescribedLaw {
  std::vector<double> R0;
  double rate = 0.0;
};

using WallLaw = std::variant<RigidLaw, ElasticLaw, PrescribedLaw>;

std::string law_name(const WallLaw& law);

/// Pointwise R = R0 + (R0^2 / E h0)(p0 - pe); throws CouplingError on collapse (R <= 0).
std::vector<double> apply_wall_law(const ElasticLaw& law, const std::vector<double>& p0);

/// max_i |R_i - law(p0)_i| / max R: the law written in radius form.
double law_residual(const ElasticLaw& law, const std::vector<double>& R, const std::vector<double>& p0);

struct CouplingOptions {
  int max_iterations = 100;
  double relaxation = 0.5;
  double tolerance = 1e-10;  // relative to max R
};

struct StepResult {
  WallState wall;
  P0Data p0;
  int iterations = 0;
  std::vector<double> residual_history;
  double law_residual = 0.0;  // 0 for non-elastic laws
  double bvp_residual = 0.0;
};

/// Wall state at t = 0: R0 for rigid/prescribed laws, the static equilibrium
/// (Rt = 0) of the elastic law otherwise.
StepResult initial_state(const UniformGrid& grid, const WallLaw& law, const FluidParams& fluid,
                         const PressureBC& bc, const CouplingOptions& options = {});

/// One implicit-Euler step from `state` to state.t + dt. `previous_dp0` is
/// p0' at state.t and feeds the backward difference of d2p0/(dt ds1).
StepResult advance_time_step(const WallState& state, const WallLaw& law, const FluidParams& fluid,
                             const PressureBC& bc, double dt, const std::vector<double>* previous_dp0,
                             const CouplingOptions& options = {});

}  // namespace cpipe

#endif
