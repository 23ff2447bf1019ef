// One line per acceptance criterion; exit status is nonzero if any fails.

#include "cpipe/appendix.hpp"
#include "cpipe/coupling.hpp"
#include "cpipe/expansion.hpp"
#include "cpipe/geometry.hpp"
#include "cpipe/polar.hpp"
#include "cpipe/pressure.hpp"
#include "cpipe/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cpipe;
using Q = Rational;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int n, bool ok, const std::string& detail, double seconds) {
  std::printf("criterion %d: %s - %s (%.2fs)\n", n, ok ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

template <class F>
void run(int n, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(n, ok, detail, s);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

WallState wall_from(double L, std::size_t n, const std::function<double(double)>& R,
                    const std::function<double(double)>& Rt) {
  const UniformGrid g(L, n);
  std::vector<double> r(n), rt(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = R(g.node(i));
    rt[i] = Rt(g.node(i));
  }
  return WallState::from_radius(g, r, rt, 0.0);
}

Station<Q> random_station(std::mt19937& gen) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6), pos(1, 9);
  auto r = [&] { return make_rational(num(gen), den(gen)); };
  Station<Q> st;
  st.R = make_rational(pos(gen), den(gen));
  st.dR = r();
  st.d2R = r();
  st.kappa = r();
  st.dkappa = r();
  st.tau = r();
  st.rho = make_rational(pos(gen), den(gen));
  st.nu = make_rational(pos(gen), den(gen));
  st.dp0 = r();
  st.d2p0 = r();
  st.d3p0 = r();
  st.dtdp0 = r();
  st.dp1 = r();
  st.p02 = r();
  st.dp02 = r();
  st.b01 = r();
  st.b02 = r();
  st.b03 = r();
  return make_consistent(st);
}

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
    s = std::max(s, std::abs(b[i]));
  }
  return m / std::max(s, 1e-300);
}

// Largest cos s2 coefficient of r * (angular component).
Q angular_cos_content(const VecPoly<Q>& U) {
  const auto polar = to_polar(DiscPoly<Q>::z2() * U.y - DiscPoly<Q>::z3() * U.x);
  Q m(0);
  for (const auto& [key, c] : polar.terms()) {
    if (std::get<2>(key) == Trig::cos && std::get<1>(key) != 0) m = std::max(m, Q(abs(c)));
  }
  return m;
}

bool poiseuille(std::string& d) {
  const auto curve = CenterCurve::straight(1.0);
  const auto wall = wall_from(1.0, 101, [](double) { return 1.0; }, [](double) { return 0.0; });
  const FluidParams fluid{1.0, 1.0};
  PressureBC bc;
  bc.p0 = {1.0, 0.0};
  const auto pe = solve_pressures(wall, curve, fluid, BodyForce{}, bc, true);
  double p_err = 0.0;
  for (std::size_t i = 0; i < wall.grid.size(); ++i) p_err = std::max(p_err, std::abs(pe.p0.p0[i] - (1.0 - wall.grid.node(i))));
  const auto st = station_at(wall, curve, fluid, BodyForce{}, pe, 50);
  const auto f = compute_fields(st, 0);
  const double centre = f.u1_0.evaluate(0.0, 0.0);
  const double Q0 = flow_rates({0.5}, {f}, {1.0}).Q0[0];
  d = "centerline u1_0 = " + fmt(centre) + ", Q0 - pi/8 = " + fmt(Q0 - kPi / 8) + ", p0 error = " + fmt(p_err);
  return std::abs(centre - 0.25) <= 1e-10 && std::abs(Q0 - kPi / 8) <= 1e-10 && p_err <= 1e-12;
}

bool convergence(std::string& d) {
  const auto s = run_convergence_study(nonuniform_p0_case(), {50, 100, 200, 400});
  std::ostringstream o;
  o << "R=(1+s)^(-1/4), errors";
  for (const auto& r : s.rows) o << ' ' << fmt(r.error);
  o << ", observed order " << fmt(s.observed_order);
  d = o.str();
  return std::abs(s.observed_order - 2.0) <= 0.2 && !s.floor_detected;
}

bool conservation(std::string& d) {
  const auto curve = CenterCurve::straight(1.0);
  const auto wall = wall_from(1.0, 101, [](double) { return 1.0; }, [](double) { return 1.0; });
  const auto pe = solve_pressures(wall, curve, FluidParams{}, BodyForce{}, PressureBC{}, true);
  const auto c = check_mass_conservation(wall, FluidParams{}, pe);
  d = "R=1, Rt=1: max |dQ0/ds1 + dA0/dt| = " + fmt(c.max_r0) + ", max |dQ1/ds1| = " + fmt(c.max_r1);
  return c.max_r0 <= 1e-8 && c.max_r1 <= 1e-10;
}

bool compatibility(std::string& d) {
  // U1 condition for solved p0 on a curved, tapered, moving wall
  const auto curve = CenterCurve::circular_arc(2.0, 1.0);
  const auto wall = wall_from(1.0, 201, [](double s) { return std::pow(1 + s, -0.25); },
                              [](double s) { return 0.2 * std::sin(3 * s); });
  PressureBC bc;
  bc.p1 = {0.4, -0.1};
  const auto pe = solve_pressures(wall, curve, FluidParams{}, BodyForce{}, bc, true);
  std::vector<Station<double>> stations;
  for (std::size_t i = 0; i < wall.grid.size(); ++i) stations.push_back(station_at(wall, curve, FluidParams{}, BodyForce{}, pe, i));
  const auto c = check_compatibility(stations);
  const double tol_u1 = 1e-8 * std::max(1.0, c.scale_u1);
  // disc integral of g, exactly, for rational stations with p1 from its equation
  std::mt19937 gen(11);
  bool exact = true;
  for (int k = 0; k < 5; ++k) exact = exact && disc_integral_over_pi(compute_fields(random_station(gen), 2).g) == 0;
  d = "U1 defect " + fmt(c.max_u1) + " (tol " + fmt(tol_u1) + "), disc integral of g: rational " +
      (exact ? "0" : "nonzero") + ", double " + fmt(c.max_u2);
  return c.max_u1 <= tol_u1 && exact && c.max_u2 <= 1e-10;
}

bool residual_oracle(std::string& d) {
  std::mt19937 gen(7);
  std::size_t items = 0, bad = 0;
  std::string first;
  for (int k = 0; k < 8; ++k) {
    for (const auto& item : grouped_order_residuals(random_station(gen))) {
      ++items;
      if (!item.exact_zero) {
        ++bad;
        if (first.empty()) first = item.problem + "/" + item.part;
      }
    }
  }
  d = std::to_string(items) + " residual identities over 8 rational stations, " + std::to_string(bad) + " nonzero" +
      (first.empty() ? "" : " (first: " + first + ")");
  return items > 0 && bad == 0;
}

bool appendix(std::string& d) {
  const auto rep = verify_appendix_tables();
  const auto& t = printed_tables();
  auto coeff = [&](const std::string& name, FCoeff f) {
    for (const auto& e : t)
      if (e.name() == name) return e.form[static_cast<std::size_t>(f)];
    return Q(-999);
  };
  const bool spots = coeff("w2^11", FCoeff::f3_20) == make_rational(-1, 24) &&
                     coeff("q^50", FCoeff::f2_22) == make_rational(11, 480) &&
                     coeff("q^50", FCoeff::f2_04) == make_rational(-1, 80) &&
                     coeff("q^50", FCoeff::f2_40) == make_rational(-1, 5);
  std::ostringstream o;
  o << "solve unique=" << (rep.unique ? "yes" : "no") << " rank " << rep.rank << "/" << rep.unknowns << ", "
    << rep.rows.size() - rep.mismatches_printed << "/" << rep.rows.size() << " printed coefficients reproduced";
  for (const auto& r : rep.rows)
    if (!r.matches_printed) o << " [" << r.name << " printed " << r.printed << ", solved " << r.solved << "]";
  o << ", " << rep.rows.size() - rep.mismatches_corrected << "/" << rep.rows.size() << " after errata, spot values "
    << (spots ? "match" : "differ");
  d = o.str();
  return rep.unique && rep.mismatches_printed == 0 && spots;
}

bool elastic(std::string& d) {
  const std::size_t n = 101;
  const UniformGrid g(1.0, n);
  const std::vector<double> R0(n, 1.0);
  const FluidParams fluid{1.0, 0.5};

  PressureBC eq;
  eq.p0 = {0.3, 0.3};
  const auto s_eq = initial_state(g, ElasticLaw{50.0, 0.1, R0, 0.3}, fluid, eq);
  double eq_err = 0.0;
  for (double r : s_eq.wall.R) eq_err = std::max(eq_err, std::abs(r - 1.0));

  const auto rigid = initial_state(g, RigidLaw{R0}, fluid, PressureBC{});
  const auto stiff = initial_state(g, ElasticLaw{1e12, 1.0, R0, 0.0}, fluid, PressureBC{});
  const double stiff_err = std::max(max_rel(stiff.wall.R, rigid.wall.R), max_rel(stiff.p0.p0, rigid.p0.p0));

  const ElasticLaw law{200.0, 0.1, R0, 0.0};
  PressureBC bc;
  bc.p0.inlet = BoundaryValue::series({{0.0, 1.0}, {0.1, 1.5}, {0.2, 1.0}});
  auto s = initial_state(g, law, fluid, bc);
  double worst_law = law_residual(law, s.wall.R, s.p0.p0), worst_bvp = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto prev = s.p0.dp0;
    s = advance_time_step(s.wall, law, fluid, bc, 0.01, &prev);
    worst_law = std::max(worst_law, law_residual(law, s.wall.R, s.p0.p0));
    std::vector<double> a(n), S(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::pow(s.wall.R[i], 4);
      S[i] = 16.0 * fluid.nu * fluid.rho * s.wall.R[i] * s.wall.Rt[i];
    }
    worst_bvp = std::max(worst_bvp, flux_bvp_residual(g, a, S, {}, s.p0.p0));
  }
  d = "equilibrium |R-R0| = " + fmt(eq_err) + ", stiff vs rigid " + fmt(stiff_err) + ", 20 steps: law " +
      fmt(worst_law) + ", p0 BVP " + fmt(worst_bvp);
  return eq_err <= 1e-12 && stiff_err <= 1e-9 && worst_law <= 1e-9 && worst_bvp <= 1e-8;
}

bool figures(std::string& d) {
  std::mt19937 gen(3);
  bool axisym = true, skew = true, radial = true;
  for (int k = 0; k < 6; ++k) {
    auto st = random_station(gen);
    const auto f = compute_fields(st, 2);
    axisym = axisym && to_polar(f.u1_0).is_axisymmetric();

    // all angular content of u1^1 in cos s2; its profile has the sign of -kappa p0' (faster toward N for p0' < 0)
    const auto p = to_polar(f.u1_1);
    for (const auto& [key, c] : p.terms()) {
      const auto [j, m, trig] = key;
      if (m != 0 && (m != 1 || trig != Trig::cos)) skew = false;
    }
    const auto mode = p.mode(1, Trig::cos);
    const Q half = make_rational(1, 2);
    Q profile(0);
    for (const auto& [j, c] : mode) {
      Q pw(1);
      for (int i = 0; i < j; ++i) pw *= half;
      profile += c * pw;
    }
    const int want = st.kappa * st.dp0 > 0 ? -1 : (st.kappa * st.dp0 < 0 ? 1 : 0);
    const int got = profile > 0 ? 1 : (profile < 0 ? -1 : 0);
    skew = skew && want == got;

    const auto z2 = DiscPoly<Q>::z2(), z3 = DiscPoly<Q>::z3();
    const auto trace = restrict_to_boundary(z2 * f.U1.x + z3 * f.U1.y);
    radial = radial && (z2 * f.U1.y - z3 * f.U1.x).is_zero() && trace.modes().size() <= 1 && trace.mean() == st.Rt;
  }

  // the cos s2 part of r u_theta for U2 appears exactly when kappa tau != 0
  bool circulation = true;
  std::string sig;
  for (const auto& [kap, tau] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, -1}}) {
    Station<Q> st;
    st.kappa = kap;
    st.tau = tau;
    st.dp0 = -1;
    st = make_consistent(st);
    const Q c = angular_cos_content(compute_fields(st, 2).U2);
    circulation = circulation && ((c != 0) == (kap * tau != 0));
    sig += " " + fmt(to_double(c));
  }
  d = std::string("u1_0 axisymmetric ") + (axisym ? "yes" : "no") + ", u1_1 cos-only with sign -kappa p0' " +
      (skew ? "yes" : "no") + ", U1 radial with trace Rt " + (radial ? "yes" : "no") +
      ", U2 cos content for (kappa,tau) = (0,0),(1,0),(0,1),(1,1),(2,-1):" + sig;
  return axisym && skew && radial && circulation;
}

bool rigid_steady(std::string& d) {
  const auto curve = CenterCurve::helix(1.0, 0.5, 1.0);
  const auto wall = wall_from(1.0, 81, [](double s) { return 1.0 - 0.2 * s; }, [](double) { return 0.0; });
  const FluidParams fluid{1.1, 0.9};
  PressureBC bc;
  bc.p1 = {0.2, 0.0};
  const auto pe = solve_pressures(wall, curve, fluid, BodyForce{}, bc, true);
  bool zero = true, same = true;
  for (std::size_t i = 0; i < wall.grid.size(); ++i) {
    const auto st = station_at(wall, curve, fluid, BodyForce{}, pe, i);
    const auto terms = p02_bracket_terms(st);
    zero = zero && st.Rt == 0.0 && st.dtdp0 == 0.0 && terms[3] == 0.0 && terms[8] == 0.0;
    // steady rigid formulas: same station with the time data removed by construction
    Station<double> steady = st;
    steady.Rt = 0.0;
    steady.dtdp0 = 0.0;
    const auto a = compute_fields(st, 1), b = compute_fields(steady, 1);
    same = same && a.u1_0 == b.u1_0 && a.u1_1 == b.u1_1 && a.U1 == b.U1 && a.p2 == b.p2;
  }
  d = std::string("Rt, d2p0/dtds1 and their bracket terms exactly zero: ") + (zero ? "yes" : "no") +
      ", order 0-1 fields equal the steady rigid fields: " + (same ? "yes" : "no");
  return zero && same;
}

}  // namespace

int main() {
  run(1, poiseuille);
  run(2, convergence);
  run(3, conservation);
  run(4, compatibility);
  run(5, residual_oracle);
  run(6, appendix);
  run(7, elastic);
  run(8, figures);
  run(9, rigid_steady);
  std::printf("%d of 9 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
