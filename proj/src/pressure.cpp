#include "cpipe/pressure.hpp"

#include "cpipe/errors.hpp"
#include "cpipe/geometry.hpp"
#include "cpipe/rational.hpp"

#include <algorithm>
#include <cmath>

namespace cpipe {

void FluidParams::validate() const {
  if (!(rho > 0.0) || !(nu > 0.0)) throw ConfigError("fluid rho and nu must be positive", "expansion");
}

BoundaryValue BoundaryValue::series(std::vector<std::pair<double, double>> points) {
  if (points.empty()) throw ConfigError("empty boundary time series", "pressure");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second)) {
      throw ConfigError("non-finite boundary value", "pressure");
    }
    if (i > 0 && !(points[i].first > points[i - 1].first)) {
      throw ConfigError("boundary time series must be increasing in t", "pressure");
    }
  }
  BoundaryValue b;
  b.series_ = std::move(points);
  return b;
}

double BoundaryValue::at(double t) const {
  if (t <= series_.front().first) return series_.front().second;
  if (t >= series_.back().first) return series_.back().second;
  auto it = std::upper_bound(series_.begin(), series_.end(), t,
                             [](double x, const auto& p) { return x < p.first; });
  const auto& [t1, v1] = *it;
  const auto& [t0, v0] = *(it - 1);
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

namespace {

double mid(const std::vector<double>& f, std::size_t i) { return f.empty() ? 0.0 : 0.5 * (f[i] + f[i + 1]); }
double at(const std::vector<double>& f, std::size_t i) { return f.empty() ? 0.0 : f[i]; }

std::vector<double> r4(const WallState& wall) {
  std::vector<double> a(wall.R.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::pow(wall.R[i], 4);
  return a;
}

}  // namespace

FluxBvpSolution solve_flux_bvp(const UniformGrid& grid, const std::vector<double>& a,
                               const std::vector<double>& S, const std::vector<double>& G, double p_in,
                               double p_out) {
  const std::size_t n = grid.size();
  const double h = grid.h();
  if (a.size() != n || (!S.empty() && S.size() != n) || (!G.empty() && G.size() != n)) {
    throw SolverError("coefficient arrays do not match the grid");
  }
  std::vector<double> am(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    am[i] = mid(a, i);
    if (!(am[i] > 0.0) || !std::isfinite(am[i])) {
      throw SolverError("singular pressure system: R^4 vanishes near s1 = " + std::to_string(grid.node(i)));
    }
  }

  // interior unknowns p_1 .. p_{n-2}; rows scaled by h
  const std::size_t m = n - 2;
  std::vector<double> lower(m), diag(m), upper(m), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    lower[k] = am[i - 1] / h;
    upper[k] = am[i] / h;
    diag[k] = -(am[i - 1] + am[i]) / h;
    rhs[k] = h * at(S, i) + (mid(G, i) - mid(G, i - 1));
  }
  rhs[0] -= lower[0] * p_in;
  rhs[m - 1] -= upper[m - 1] * p_out;

  double scale = 0.0;
  for (double d : diag) scale = std::max(scale, std::abs(d));
  for (std::size_t k = 1; k < m; ++k) {
    const double w = lower[k] / diag[k - 1];
    diag[k] -= w * upper[k - 1];
    rhs[k] -= w * rhs[k - 1];
    if (std::abs(diag[k]) <= 1e-14 * scale) throw SolverError("singular tridiagonal pressure system");
  }
  FluxBvpSolution sol;
  sol.p.assign(n, 0.0);
  sol.p[0] = p_in;
  sol.p[n - 1] = p_out;
  sol.p[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t k = m - 1; k-- > 0;) sol.p[k + 1] = (rhs[k] - upper[k] * sol.p[k + 2]) / diag[k];

  sol.flux_mid.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) sol.flux_mid[i] = am[i] * (sol.p[i + 1] - sol.p[i]) / h;

  // H = F - G satisfies H' = S; nodal H by averaging, ends by a half-cell step
  std::vector<double> H(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    H[i] = 0.5 * (sol.flux_mid[i - 1] - mid(G, i - 1) + sol.flux_mid[i] - mid(G, i));
  }
  H[0] = sol.flux_mid[0] - mid(G, 0) - 0.5 * h * (3.0 * at(S, 0) + at(S, 1)) / 4.0;
  H[n - 1] = sol.flux_mid[n - 2] - mid(G, n - 2) + 0.5 * h * (3.0 * at(S, n - 1) + at(S, n - 2)) / 4.0;
  sol.dp.resize(n);
  for (std::size_t i = 0; i < n; ++i) sol.dp[i] = (H[i] + at(G, i)) / a[i];
  return sol;
}

double flux_bvp_residual(const UniformGrid& grid, const std::vector<double>& a, const std::vector<double>& S,
                         const std::vector<double>& G, const std::vector<double>& p) {
  const std::size_t n = grid.size();
  const double h = grid.h();
  std::vector<double> F(n - 1);
  double scale = 1e-300;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    F[i] = mid(a, i) * (p[i + 1] - p[i]) / h;
    scale = std::max({scale, std::abs(F[i]), std::abs(mid(G, i))});
  }
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, h * std::abs(at(S, i)));
  double r = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    r = std::max(r, std::abs(F[i] - F[i - 1] - h * at(S, i) - (mid(G, i) - mid(G, i - 1))));
  }
  return r / scale;
}

P0Data solve_p0(const WallState& wall, const FluidParams& fluid, const PressureBC& bc,
                const std::vector<double>* previous_dp0, double dt) {
  fluid.validate();
  const std::size_t n = wall.grid.size();
  P0Data d;
  d.source.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.source[i] = 16.0 * fluid.nu * fluid.rho * wall.R[i] * wall.Rt[i];
  auto sol = solve_flux_bvp(wall.grid, r4(wall), d.source, {}, bc.p0.inlet.at(wall.t), bc.p0.outlet.at(wall.t));
  d.p0 = std::move(sol.p);
  d.dp0 = std::move(sol.dp);
  // p0'' from the ODE itself: R^4 p0'' = S - 4 R^3 R' p0'
  d.d2p0.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double R = wall.R[i];
    d.d2p0[i] = (d.source[i] - 4.0 * R * R * R * wall.dR[i] * d.dp0[i]) / (R * R * R * R);
  }
  d.d3p0 = fd_first(d.d2p0, wall.grid.h());
  d.dtdp0.assign(n, 0.0);
  if (previous_dp0 != nullptr) {
    if (previous_dp0->size() != n) throw SolverError("previous p0' has the wrong size");
    if (!(dt > 0.0)) throw ConfigError("time step must be positive", "pressure");
    for (std::size_t i = 0; i < n; ++i) d.dtdp0[i] = (d.dp0[i] - (*previous_dp0)[i]) / dt;
  }
  return d;
}

P1Data solve_p1(const WallState& wall, const FluidParams& fluid, const PressureBC& bc) {
  fluid.validate();
  const std::size_t n = wall.grid.size();
  auto sol = solve_flux_bvp(wall.grid, r4(wall), {}, {}, bc.p1.inlet.at(wall.t), bc.p1.outlet.at(wall.t));
  P1Data d;
  d.p1 = std::move(sol.p);
  // the flux is one constant; the average of the midpoint values removes solve round-off
  double c = 0.0;
  for (double f : sol.flux_mid) c += f;
  d.flux = c / static_cast<double>(sol.flux_mid.size());
  d.dp1.resize(n);
  d.d2p1.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double R = wall.R[i];
    d.dp1[i] = d.flux / (R * R * R * R);
    // (R^4 p1')' = 0  =>  p1'' = -4 R' p1' / R
    d.d2p1[i] = -4.0 * wall.dR[i] * d.dp1[i] / R;
  }
  return d;
}

const std::array<const char*, 10> kP02TermNames = {
    "p0' p0''", "p0'''", "kappa^2 p0'", "Rt p0'", "R' p0'^2", "R'^2 p0'", "R'' p0'", "R' p0''", "dt p0'", "b01"};

template <class T>
std::array<T, 10> p02_bracket_terms(const Station<T>& st) {
  const T& R = st.R;
  const T R2 = R * R;
  const T R4 = R2 * R2;
  const T R5 = R4 * R;
  const T R6 = R4 * R2;
  const T R7 = R6 * R;
  const T R8 = R4 * R4;
  const T& rho = st.rho;
  const T& nu = st.nu;
  return {
      -T(3) * R8 / (T(64) * rho * nu * nu) * st.dp0 * st.d2p0,
      -R6 / T(12) * st.d3p0,
      -st.kappa * st.kappa * R6 / T(48) * st.dp0,
      R5 / (T(2) * nu) * st.Rt * st.dp0,
      -R7 / (T(8) * rho * nu * nu) * st.dR * st.dp0 * st.dp0,
      -R4 / T(2) * st.dR * st.dR * st.dp0,
      -R5 / T(2) * st.d2R * st.dp0,
      -R5 * st.dR * st.d2p0,
      R6 / (T(6) * nu) * st.dtdp0,
      R4 * rho * st.b01,
  };
}

template std::array<double, 10> p02_bracket_terms(const Station<double>&);
template std::array<Rational, 10> p02_bracket_terms(const Station<Rational>&);

std::vector<double> p02_bracket_nodes(const WallState& wall, const CenterCurve& curve, const FluidParams& fluid,
                                      const P0Data& p0, const BodyForce& body, bool steady) {
  const std::size_t n = wall.grid.size();
  if (!steady && p0.dtdp0.size() != n) {
    throw ConfigError("unsteady run needs d2p0/(dt ds1) for the p0^2 problem", "pressure");
  }
  std::vector<double> G(n);
  for (std::size_t i = 0; i < n; ++i) {
    Station<double> st;
    st.R = wall.R[i];
    st.dR = wall.dR[i];
    st.d2R = wall.d2R[i];
    st.Rt = wall.Rt[i];
    st.kappa = curve.frame(std::min(wall.grid.node(i), curve.length())).kappa;
    st.rho = fluid.rho;
    st.nu = fluid.nu;
    st.dp0 = p0.dp0[i];
    st.d2p0 = p0.d2p0[i];
    st.d3p0 = p0.d3p0[i];
    st.dtdp0 = steady ? 0.0 : p0.dtdp0[i];
    st.b01 = body.b01;
    G[i] = p02_bracket(st);
  }
  return G;
}

P02Data solve_p02(const WallState& wall, const CenterCurve& curve, const FluidParams& fluid, const P0Data& p0,
                  const BodyForce& body, const PressureBC& bc, bool steady) {
  fluid.validate();
  P02Data d;
  d.bracket = p02_bracket_nodes(wall, curve, fluid, p0, body, steady);
  auto sol = solve_flux_bvp(wall.grid, r4(wall), {}, d.bracket, bc.p02.inlet.at(wall.t), bc.p02.outlet.at(wall.t));
  d.p02 = std::move(sol.p);
  d.dp02 = std::move(sol.dp);
  return d;
}

PressureExpansion solve_pressures(const WallState& wall, const CenterCurve& curve, const FluidParams& fluid,
                                  const BodyForce& body, const PressureBC& bc, bool steady,
                                  const std::vector<double>* previous_dp0, double dt) {
  PressureExpansion pe;
  pe.grid = wall.grid;
  pe.p0 = solve_p0(wall, fluid, bc, steady ? nullptr : previous_dp0, dt);
  pe.p1 = solve_p1(wall, fluid, bc);
  pe.p02 = solve_p02(wall, curve, fluid, pe.p0, body, bc, steady);
  return pe;
}

Station<double> station_at(const WallState& wall, const CenterCurve& curve, const FluidParams& fluid,
                           const BodyForce& body, const PressureExpansion& pe, std::size_t i) {
  const FrenetFrame f = curve.frame(std::min(wall.grid.node(i), curve.length()));
  Station<double> st;
  st.R = wall.R[i];
  st.dR = wall.dR[i];
  st.d2R = wall.d2R[i];
  st.Rt = wall.Rt[i];
  st.kappa = f.kappa;
  st.dkappa = f.dkappa;
  st.tau = f.tau;
  st.rho = fluid.rho;
  st.nu = fluid.nu;
  st.dp0 = pe.p0.dp0[i];
  st.d2p0 = pe.p0.d2p0[i];
  st.d3p0 = pe.p0.d3p0[i];
  st.dtdp0 = pe.p0.dtdp0.empty() ? 0.0 : pe.p0.dtdp0[i];
  st.dp1 = pe.p1.dp1[i];
  st.d2p1 = pe.p1.d2p1[i];
  st.p02 = pe.p02.p02[i];
  st.dp02 = pe.p02.dp02[i];
  st.b01 = body.b01;
  st.b02 = body.b02;
  st.b03 = body.b03;
  return st;
}

}  // namespace cpipe
