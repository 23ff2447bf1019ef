#ifndef CPIPE_PRESSURE_HPP
#define CPIPE_PRESSURE_HPP

#include "cpipe/station.hpp"
#include "cpipe/wall.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cpipe {

class CenterCurve;

/// Boundary value, constant or a piecewise-linear time series (t, value).
class BoundaryValue {
 public:
  BoundaryValue(double v = 0.0) : series_{{0.0, v}} {}  // NOLINT: implicit on purpose
  static BoundaryValue series(std::vector<std::pair<double, double>> points);
  double at(double t) const;
  bool is_constant() const { return series_.size() == 1; }
  const std::vector<std::pair<double, double>>& points() const { return series_; }

 private:
  std::vector<std::pair<double, double>> series_;
};

struct DirichletPair {
  BoundaryValue inlet;
  BoundaryValue outlet;
};

struct PressureBC {
  DirichletPair p0{1.0, 0.0};
  DirichletPair p1{0.0, 0.0};
  DirichletPair p02{0.0, 0.0};
};

/// Solution of (a p')' = S + G' on a uniform grid in flux form.
struct FluxBvpSolution {
  std::vector<double> p;
  std::vector<double> dp;        // nodal p'
  std::vector<double> flux_mid;  // a_{i+1/2} (p_{i+1} - p_i) / h, size n - 1
};

/// Conservative solve with a_{i+1/2} = (a_i + a_{i+1}) / 2 and
/// G_{i+1/2} = (G_i + G_{i+1}) / 2; empty S or G means zero.
FluxBvpSolution solve_flux_bvp(const UniformGrid& grid, const std::vector<double>& a,
                               const std::vector<double>& S, const std::vector<double>& G, double p_in,
                               double p_out);

/// Max over interior nodes of |F_{i+1/2} - F_{i-1/2} - h S_i - (G_{i+1/2} - G_{i-1/2})|,
/// relative to max(|F|, |G|, h |S|, tiny).
double flux_bvp_residual(const UniformGrid& grid, const std::vector<double>& a, const std::vector<double>& S,
                         const std::vector<double>& G, const std::vector<double>& p);

struct P0Data {
  std::vector<double> p0, dp0, d2p0, d3p0;
  /// d2p0/(dt ds1); empty means unavailable.
  std::vector<double> dtdp0;
  std::vector<double> source;  // 16 nu rho R Rt
};

struct P1Data {
  std::vector<double> p1, dp1, d2p1;
  double flux = 0.0;  // R^4 p1', constant
};

struct P02Data {
  std::vector<double> p02, dp02;
  std::vector<double> bracket;  // G(s1), the bracket under d/ds1
};

/// Grids of p0, p1, p0^2 and the derivatives consumed by the velocity terms.
struct PressureExpansion {
  UniformGrid grid;
  P0Data p0;
  P1Data p1;
  P02Data p02;
};

/// (R^4 p0')' = 16 nu rho R Rt. If `previous_dp0` is given, d2p0/(dt ds1) is
/// the backward difference over dt; otherwise it is zero (first step or steady).
P0Data solve_p0(const WallState& wall, const FluidParams& fluid, const PressureBC& bc,
                const std::vector<double>* previous_dp0 = nullptr, double dt = 0.0);

/// (R^4 p1')' = 0.
P1Data solve_p1(const WallState& wall, const FluidParams& fluid, const PressureBC& bc);

/// Named terms of the bracket G with (R^4 p02')' = G'. Order matches the
/// printed bracket.
template <class T>
std::array<T, 10> p02_bracket_terms(const Station<T>& st);
extern const std::array<const char*, 10> kP02TermNames;

template <class T>
T p02_bracket(const Station<T>& st) {
  T sum(0);
  for (const auto& v : p02_bracket_terms(st)) sum += v;
  return sum;
}

/// Nodal G for the current wall / p0 state; throws ConfigError when the wall
/// moves and d2p0/(dt ds1) is missing.
std::vector<double> p02_bracket_nodes(const WallState& wall, const CenterCurve& curve, const FluidParams& fluid,
                                      const P0Data& p0, const BodyForce& body, bool steady);

P02Data solve_p02(const WallState& wall, const CenterCurve& curve, const FluidParams& fluid, const P0Data& p0,
                  const BodyForce& body, const PressureBC& bc, bool steady);

/// All three problems at time wall.t.
PressureExpansion solve_pressures(const WallState& wall, const CenterCurve& curve, const FluidParams& fluid,
                                  const BodyForce& body, const PressureBC& bc, bool steady,
                                  const std::vector<double>* previous_dp0 = nullptr, double dt = 0.0);

/// Station data at node i.
Station<double> station_at(const WallState& wall, const CenterCurve& curve, const FluidParams& fluid,
                           const BodyForce& body, const PressureExpansion& pe, std::size_t i);

}  // namespace cpipe

#endif
