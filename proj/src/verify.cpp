#include "cpipe/verify.hpp"

#include "cpipe/errors.hpp"
#include "cpipe/polar.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cpipe {

constexpr double kPi = std::numbers::pi;

FlowRates flow_rates(const std::vector<double>& s1, const std::vector<ExpansionFields<double>>& fields,
                     const std::vector<double>& R) {
  if (fields.size() != R.size() || s1.size() != R.size()) throw ConfigError("flow-rate inputs differ in size", "verify");
  FlowRates q;
  q.s1 = s1;
  for (std::size_t i = 0; i < R.size(); ++i) {
    const double r2 = R[i] * R[i];
    q.Q0.push_back(r2 * disc_integral(fields[i].u1_0));
    q.Q1.push_back(r2 * disc_integral(fields[i].u1_1));
    q.Q2.push_back(r2 * disc_integral(fields[i].u1_2));
    q.A0.push_back(kPi * r2);
  }
  return q;
}

ConservationReport check_mass_conservation(const WallState& wall, const FluidParams& fluid,
                                           const PressureExpansion& pe) {
  const std::size_t n = wall.grid.size();
  const double h = wall.grid.h();
  const double c = -kPi / (8.0 * fluid.rho * fluid.nu);
  auto a_mid = [&](std::size_t i) { return 0.5 * (std::pow(wall.R[i], 4) + std::pow(wall.R[i + 1], 4)); };
  std::vector<double> q0(n - 1), q1(n - 1), q2(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = a_mid(i);
    q0[i] = c * a * (pe.p0.p0[i + 1] - pe.p0.p0[i]) / h;
    q1[i] = c * a * (pe.p1.p1[i + 1] - pe.p1.p1[i]) / h;
    const double G = 0.5 * (pe.p02.bracket[i] + pe.p02.bracket[i + 1]);
    q2[i] = c * (a * (pe.p02.p02[i + 1] - pe.p02.p02[i]) / h - G);
  }
  ConservationReport r;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dA = 2.0 * kPi * wall.R[i] * wall.Rt[i];
    r.r0.push_back((q0[i] - q0[i - 1]) / h + dA);
    r.r1.push_back((q1[i] - q1[i - 1]) / h);
    r.r2.push_back((q2[i] - q2[i - 1]) / h);
    r.scale0 = std::max(r.scale0, std::abs(dA));
  }
  auto maxabs = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  r.max_r0 = maxabs(r.r0);
  r.max_r1 = maxabs(r.r1);
  r.max_r2 = maxabs(r.r2);
  return r;
}

CompatibilityReport check_compatibility(const std::vector<Station<double>>& stations) {
  CompatibilityReport rep;
  for (const auto& st : stations) {
    const double lhs = 2.0 * kPi * st.R / (16.0 * st.rho * st.nu) * (2.0 * st.ds_R2dp0() - st.R * st.R * st.d2p0);
    const double rhs = 2.0 * kPi * st.Rt;
    rep.u1_defect.push_back(lhs - rhs);
    rep.max_u1 = std::max(rep.max_u1, std::abs(lhs - rhs));
    rep.scale_u1 = std::max({rep.scale_u1, std::abs(lhs), std::abs(rhs)});
    const auto g = build_U2_rhs(st).g;
    const double ig = disc_integral(g);
    rep.u2_defect.push_back(ig);
    rep.max_u2 = std::max(rep.max_u2, std::abs(ig));
    rep.scale_u2 = std::max(rep.scale_u2, kPi * g.max_abs_coeff());
  }
  return rep;
}

namespace {

template <class T>
double scale_of(std::initializer_list<const DiscPoly<T>*> ps) {
  double s = 0.0;
  for (const auto* p : ps) s = std::max(s, p->max_abs_coeff());
  return s;
}

template <class T>
ResidualItem item(std::string problem, std::string part, const DiscPoly<T>& residual, double scale) {
  return {std::move(problem), std::move(part), residual.max_abs_coeff(), scale, residual.is_zero()};
}

template <class T>
ResidualItem trace_item(std::string problem, std::string part, FourierSeries<T> trace, const FourierSeries<T>& expected,
                        double scale) {
  auto neg = expected;
  neg *= T(-1);
  trace += neg;
  return {std::move(problem), std::move(part), trace.max_abs_coeff(), std::max(scale, expected.max_abs_coeff()),
          trace.is_zero()};
}

}  // namespace

template <class T>
Station<T> make_consistent(Station<T> st) {
  st.Rt = (T(4) * st.R * st.R * st.R * st.dR * st.dp0 + st.R * st.R * st.R * st.R * st.d2p0) /
          (T(16) * st.nu * st.rho * st.R);
  st.d2p1 = -T(4) * st.dR * st.dp1 / st.R;
  return st;
}

template <class T>
std::vector<ResidualItem> grouped_order_residuals(const Station<T>& st) {
  using P = DiscPoly<T>;
  const P one = P::constant(T(1));
  const P z2 = P::z2(), z3 = P::z3(), r2 = P::rho2();
  const T& R = st.R;
  const T R2 = R * R, R3 = R2 * R, R4 = R2 * R2, R6 = R4 * R2;
  const T rn = st.rho * st.nu;
  const T rn2 = st.rho * st.nu * st.nu;
  const T r2n3 = st.rho * st.rho * st.nu * st.nu * st.nu;
  const T k2 = st.kappa * st.kappa;
  const FourierSeries<T> zero_trace;
  std::vector<ResidualItem> out;

  // order eps^-2: Delta u1^0 = (R^2 / nu rho) p0'
  {
    const P u = eval_u1_0(st);
    const P rhs = P::constant(R2 / rn * st.dp0);
    const P lap = laplacian(u);
    out.push_back(item("u1^0", "Laplacian", lap - rhs, scale_of<T>({&lap, &rhs, &u})));
    out.push_back(trace_item("u1^0", "trace", restrict_to_boundary(u), zero_trace, u.max_abs_coeff()));
  }
  // Delta u1^1 = (R^2 / nu rho)(p1' + (3 R kappa / 2) z2 p0')
  {
    const P u = eval_u1_1(st);
    const P rhs = (R2 / rn) * (P::constant(st.dp1) + (T(3) * R * st.kappa / T(2) * st.dp0) * z2);
    const P lap = laplacian(u);
    out.push_back(item("u1^1", "Laplacian", lap - rhs, scale_of<T>({&lap, &rhs, &u})));
    out.push_back(trace_item("u1^1", "trace", restrict_to_boundary(u), zero_trace, u.max_abs_coeff()));
  }
  // Delta U1 = (R / nu rho) grad p2, div U1 = g1, U1 = Rt (cos, sin) on the circle
  {
    const VecPoly<T> U = eval_U1(st);
    const P p2 = eval_p2(st);
    const VecPoly<T> lap = laplacian(U);
    const VecPoly<T> gp = (R / rn) * gradient(p2);
    out.push_back(item("U1", "momentum z2", lap.x - gp.x, scale_of<T>({&lap.x, &gp.x, &U.x})));
    out.push_back(item("U1", "momentum z3", lap.y - gp.y, scale_of<T>({&lap.y, &gp.y, &U.y})));
    const P g1 = (R / (T(4) * rn)) * (P::constant(st.ds_R2dp0()) - (R2 * st.d2p0) * r2);
    const P div = divergence(U);
    out.push_back(item("U1", "divergence", div - g1, scale_of<T>({&div, &g1, &U.x, &U.y})));
    FourierSeries<T> ec, es;
    ec.add(1, st.Rt, T(0));
    es.add(1, T(0), st.Rt);
    out.push_back(trace_item("U1", "trace z2", restrict_to_boundary(U.x), ec, U.x.max_abs_coeff()));
    out.push_back(trace_item("U1", "trace z3", restrict_to_boundary(U.y), es, U.y.max_abs_coeff()));
    // the potential of the construction reproduces U1 with no solenoidal part
    const VecPoly<T> gphi = gradient(phi_A(st));
    out.push_back(item("U1", "U1 - grad phi (z2)", U.x - gphi.x, U.x.max_abs_coeff()));
    out.push_back(item("U1", "U1 - grad phi (z3)", U.y - gphi.y, U.y.max_abs_coeff()));
  }
  // order eps^0 axial problem for u1^2
  {
    const P u = eval_u1_2(st);
    const P rhs =
        (R4 / (T(4) * rn2) * st.dtdp0 - R6 / (T(16) * r2n3) * st.dp0 * st.d2p0 - R4 / (T(2) * rn) * st.d3p0 +
         T(7) * k2 * R4 / (T(16) * rn) * st.dp0) *
            r2 +
        (R6 / (T(32) * r2n3) * st.dp0 * st.d2p0) * (r2 * r2) +
        P::constant(-R2 / (T(4) * rn2) * st.dt_R2dp0() + R4 / (T(16) * r2n3) * st.dp0 * st.ds_R2dp0() +
                    R2 / (T(4) * rn) * st.dss_R2dp0() - T(7) * k2 * R4 / (T(16) * rn) * st.dp0 +
                    R2 / rn * st.dp02 - R2 * st.b01 / st.nu) +
        (T(3) * st.kappa * R3 / (T(2) * rn) * st.dp1) * z2 + (T(15) * k2 * R4 / (T(8) * rn) * st.dp0) * (z2 * z2);
    const P lap = laplacian(u);
    out.push_back(item("u1^2", "Laplacian", lap - rhs, scale_of<T>({&lap, &rhs, &u})));
    out.push_back(trace_item("u1^2", "trace", restrict_to_boundary(u), zero_trace, u.max_abs_coeff()));
  }
  // cross-section Stokes problem for (U2, p3)
  {
    const auto rhs = build_U2_rhs(st);
    const auto sol = solve_U2(st, rhs);
    const VecPoly<T> lap = laplacian(sol.U2);
    const VecPoly<T> gp = (R / rn) * gradient(sol.p3);
    const P rx = lap.x - gp.x - rhs.F.x;
    const P ry = lap.y - gp.y - rhs.F.y;
    out.push_back(item("U2", "momentum z2", rx, scale_of<T>({&lap.x, &gp.x, &rhs.F.x, &sol.U2.x})));
    out.push_back(item("U2", "momentum z3", ry, scale_of<T>({&lap.y, &gp.y, &rhs.F.y, &sol.U2.y})));
    const P div = divergence(sol.U2);
    out.push_back(item("U2", "divergence", div - rhs.g, scale_of<T>({&div, &rhs.g, &sol.U2.x, &sol.U2.y})));
    out.push_back(trace_item("U2", "trace z2", restrict_to_boundary(sol.U2.x), zero_trace, sol.U2.x.max_abs_coeff()));
    out.push_back(trace_item("U2", "trace z3", restrict_to_boundary(sol.U2.y), zero_trace, sol.U2.y.max_abs_coeff()));
    // construction pieces: Delta phi = g with zero flux; psi boundary conditions
    const P lphi = laplacian(sol.phi);
    out.push_back(item("phi", "Laplacian - g", lphi - rhs.g, scale_of<T>({&lphi, &rhs.g, &sol.phi})));
    out.push_back(trace_item("phi", "normal derivative", restrict_to_boundary(radial_derivative(sol.phi)), zero_trace,
                             sol.phi.max_abs_coeff()));
    out.push_back(trace_item("psi", "tangential derivative", restrict_to_boundary(angular_derivative(sol.psi.psi)),
                             zero_trace, sol.psi.psi.max_abs_coeff()));
    out.push_back(trace_item("psi", "normal derivative - dphi/ds2",
                             restrict_to_boundary(radial_derivative(sol.psi.psi)),
                             restrict_to_boundary(angular_derivative(sol.phi)), sol.psi.psi.max_abs_coeff()));
  }
  return out;
}

template Station<double> make_consistent(Station<double>);
template Station<Rational> make_consistent(Station<Rational>);
template std::vector<ResidualItem> grouped_order_residuals(const Station<double>&);
template std::vector<ResidualItem> grouped_order_residuals(const Station<Rational>&);

ConvergenceStudy run_convergence_study(const ConvergenceCase& c, const std::vector<std::size_t>& sizes) {
  ConvergenceStudy study;
  study.name = c.name;
  const CenterCurve curve = CenterCurve::straight(c.length);
  double scale = 0.0;
  for (std::size_t n : sizes) {
    const UniformGrid grid(c.length, n);
    std::vector<double> R(n);
    for (std::size_t i = 0; i < n; ++i) R[i] = c.R(grid.node(i));
    const WallState wall = WallState::rigid(grid, R);
    std::vector<double> p;
    switch (c.unknown) {
      case ConvergenceCase::Unknown::p0: p = solve_p0(wall, c.fluid, c.bc).p0; break;
      case ConvergenceCase::Unknown::p1: p = solve_p1(wall, c.fluid, c.bc).p1; break;
      case ConvergenceCase::Unknown::p02: {
        const auto p0 = solve_p0(wall, c.fluid, c.bc);
        p = solve_p02(wall, curve, c.fluid, p0, BodyForce{}, c.bc, true).p02;
        break;
      }
    }
    ConvergenceRow row;
    row.n = n;
    row.h = grid.h();
    for (std::size_t i = 0; i < n; ++i) {
      const double ex = c.exact(grid.node(i));
      row.error = std::max(row.error, std::abs(p[i] - ex));
      scale = std::max(scale, std::abs(ex));
    }
    row.at_floor = row.error <= 1e-13 * std::max(scale, 1.0);
    if (!study.rows.empty()) {
      const auto& prev = study.rows.back();
      if (!row.at_floor && !prev.at_floor) {
        row.order = std::log(prev.error / row.error) / std::log(prev.h / row.h);
        study.observed_order = row.order;
      }
    }
    study.floor_detected = study.floor_detected || row.at_floor;
    study.rows.push_back(row);
  }
  return study;
}

namespace {

using boost::math::quadrature::gauss_kronrod;

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  // smooth integrands: one 61-point rule is already at round-off, so stay shallow
  return gauss_kronrod<double, 61>::integrate(f, a, b, 4, 1e-14);
}

// p(s) = p_in + C * int_0^s (G + K) / R^4 with K fixing p(L) = p_out
std::function<double(double)> flux_oracle(std::function<double(double)> R, std::function<double(double)> G,
                                          double L, double p_in, double p_out) {
  auto invR4 = [R](double s) { return 1.0 / std::pow(R(s), 4); };
  auto GinvR4 = [R, G](double s) { return G(s) / std::pow(R(s), 4); };
  const double K = (p_out - p_in - integrate(GinvR4, 0.0, L)) / integrate(invR4, 0.0, L);
  return [=](double s) { return p_in + integrate(GinvR4, 0.0, s) + K * integrate(invR4, 0.0, s); };
}

double quarter_root(double s) { return std::pow(1.0 + s, -0.25); }

}  // namespace

ConvergenceCase nonuniform_p0_case() {
  ConvergenceCase c;
  c.name = "p0, R = (1+s)^(-1/4)";
  c.unknown = ConvergenceCase::Unknown::p0;
  c.R = quarter_root;
  c.bc.p0 = {0.0, 1.0};
  c.exact = flux_oracle(c.R, [](double) { return 0.0; }, 1.0, 0.0, 1.0);
  return c;
}

ConvergenceCase nonuniform_p1_case() {
  ConvergenceCase c;
  c.name = "p1, R = (1+s)^(-1/4)";
  c.unknown = ConvergenceCase::Unknown::p1;
  c.R = quarter_root;
  c.bc.p1 = {1.0, 0.0};
  c.exact = flux_oracle(c.R, [](double) { return 0.0; }, 1.0, 1.0, 0.0);
  return c;
}

ConvergenceCase nonuniform_p02_case() {
  ConvergenceCase c;
  c.name = "p0^2, R = (1+s)^(-1/4)";
  c.unknown = ConvergenceCase::Unknown::p02;
  c.R = quarter_root;
  c.bc.p0 = {0.0, 1.0};
  c.bc.p02 = {0.0, 0.0};
  // exact p0' = C0 (1+s) with C0 = 2/3; rho = nu = 1, straight rigid pipe
  const double C0 = 2.0 / 3.0;
  auto G = [C0](double s) {
    const double R = std::pow(1.0 + s, -0.25);
    const double dR = -0.25 * std::pow(1.0 + s, -1.25);
    const double d2R = 0.3125 * std::pow(1.0 + s, -2.25);
    const double dp = C0 * (1.0 + s), d2p = C0;
    const double R4 = std::pow(R, 4), R5 = R4 * R, R7 = R5 * R * R, R8 = R4 * R4;
    return -3.0 * R8 / 64.0 * dp * d2p - R7 / 8.0 * dR * dp * dp - R4 / 2.0 * dR * dR * dp - R5 / 2.0 * d2R * dp -
           R5 * dR * d2p;
  };
  c.exact = flux_oracle(c.R, G, 1.0, 0.0, 0.0);
  return c;
}

ConvergenceCase constant_p0_case() {
  ConvergenceCase c;
  c.name = "p0, R = 1";
  c.unknown = ConvergenceCase::Unknown::p0;
  c.R = [](double) { return 1.0; };
  c.bc.p0 = {1.0, 0.0};
  c.exact = [](double s) { return 1.0 - s; };
  return c;
}

}  // namespace cpipe
