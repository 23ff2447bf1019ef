#include "cpipe/coupling.hpp"
#include "cpipe/geometry.hpp"
#include "cpipe/verify.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cpipe;
using Q = Rational;

namespace {

constexpr double kPi = std::numbers::pi;

// polar quadrature of a cross-section polynomial
double disc_quadrature(const DiscPoly<double>& p) {
  using boost::math::quadrature::gauss;
  auto ring = [&](double r) {
    double s = 0.0;
    for (int k = 0; k < 64; ++k) {
      const double a = 2 * kPi * k / 64;
      s += p.evaluate(r * std::cos(a), r * std::sin(a));
    }
    return r * s * 2 * kPi / 64;
  };
  return gauss<double, 30>::integrate(ring, 0.0, 1.0);
}

struct Run {
  CenterCurve curve;
  WallState wall;
  PressureExpansion pe;
  std::vector<Station<double>> stations;
  std::vector<ExpansionFields<double>> fields;
};

Run make_run(const CenterCurve& curve, std::function<double(double)> R, double rate, std::size_t n, bool steady,
             const PressureBC& bc = {}, const FluidParams& fluid = {}) {
  Run r;
  r.curve = curve;
  const UniformGrid g(curve.length(), n);
  std::vector<double> Rv(n), Rt(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rv[i] = R(g.node(i));
    Rt[i] = rate * Rv[i];
  }
  r.wall = WallState::from_radius(g, Rv, Rt, 0.0);
  std::vector<double> prev;
  const std::vector<double>* prevp = nullptr;
  if (!steady) {
    // a previous level with a different outlet pressure gives a nonzero d2p0/(dt ds1)
    PressureBC old = bc;
    old.p0.outlet = bc.p0.outlet.at(0.0) + 0.1;
    prev = solve_p0(r.wall, fluid, old).dp0;
    prevp = &prev;
  }
  BodyForce body;
  body.b01 = 0.3;
  r.pe = solve_pressures(r.wall, r.curve, fluid, body, bc, steady, prevp, 0.05);
  for (std::size_t i = 0; i < n; ++i) {
    r.stations.push_back(station_at(r.wall, r.curve, fluid, body, r.pe, i));
    r.fields.push_back(compute_fields(r.stations.back(), 2));
  }
  return r;
}

Station<Q> random_station(std::mt19937& gen) {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 7), pos(1, 12);
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

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("flow rates") {
    Station<double> st;
    st.dp0 = -1.0;
    st.kappa = 2.0;
    const auto f = compute_fields(st, 2);
    CHECK(disc_quadrature(f.u1_0) == doctest::Approx(kPi / 8).epsilon(1e-13));
    const auto q = flow_rates({0.0}, {f}, {1.0});
    CHECK(q.Q0[0] == doctest::Approx(kPi / 8).epsilon(1e-14));
    CHECK(std::abs(q.Q1[0]) < 1e-15);
    CHECK(std::abs(disc_quadrature(f.u1_1)) < 1e-14);
    const auto zero = flow_rates({0.0}, {ExpansionFields<double>{}}, {1.0});
    CHECK(zero.Q0[0] == 0.0);
  }

  TEST_CASE("mass conservation: rigid nonuniform wall") {
    const auto r = make_run(CenterCurve::circular_arc(2.0, 1.0), [](double s) { return std::pow(1 + s, -0.25); }, 0.0,
                            101, true);
    const auto c = check_mass_conservation(r.wall, FluidParams{}, r.pe);
    CHECK(c.max_r0 <= 1e-8);
    CHECK(c.max_r1 <= 1e-10);
  }

  TEST_CASE("mass conservation: uniformly expanding wall") {
    PressureBC bc;
    bc.p1 = {0.5, 0.1};
    const auto r = make_run(CenterCurve::straight(1.0), [](double) { return 1.0; }, 1.0, 101, true, bc);
    const auto c = check_mass_conservation(r.wall, FluidParams{}, r.pe);
    CHECK(c.scale0 == doctest::Approx(2 * kPi));
    CHECK(c.max_r0 <= 1e-8);
    CHECK(c.max_r1 <= 1e-10);
  }

  TEST_CASE("second-order flux matches the bracket") {
    // Q2 = R^2 * disc integral of u1^2 must equal -(pi / 8 rho nu)(R^4 p02' - G) node by node
    const FluidParams fluid{1.2, 0.8};
    PressureBC bc;
    bc.p1 = {0.3, -0.2};
    bc.p02 = {0.1, 0.0};
    const auto r = make_run(CenterCurve::helix(1.0, 0.4, 1.5), [](double s) { return 1.0 + 0.2 * std::sin(2 * s); },
                            0.4, 121, false, bc, fluid);
    std::vector<double> s1, R;
    for (std::size_t i = 0; i < r.stations.size(); ++i) {
      s1.push_back(r.wall.grid.node(i));
      R.push_back(r.wall.R[i]);
    }
    const auto q = flow_rates(s1, r.fields, R);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
      const double G = std::pow(R[i], 4) * r.pe.p02.dp02[i] + 8 * fluid.rho * fluid.nu / kPi * q.Q2[i];
      worst = std::max(worst, std::abs(G - r.pe.p02.bracket[i]));
      scale = std::max(scale, std::abs(r.pe.p02.bracket[i]));
    }
    CHECK(scale > 0.1);
    CHECK(worst <= 1e-12 * scale);
    const auto c = check_mass_conservation(r.wall, fluid, r.pe);
    CHECK(c.max_r2 <= 1e-10 * scale);
  }

  TEST_CASE("compatibility") {
    const auto straight = make_run(CenterCurve::straight(1.0), [](double) { return 1.0; }, 0.0, 21, true);
    const auto a = check_compatibility(straight.stations);
    CHECK(a.max_u1 == 0.0);
    CHECK(a.max_u2 == 0.0);
    PressureBC bc;
    bc.p0 = {0.0, 0.0};
    const auto moving = make_run(CenterCurve::straight(1.0), [](double) { return 1.0; }, 1.0, 21, true, bc);
    const auto b = check_compatibility(moving.stations);
    CHECK(b.max_u1 <= 1e-12);
    // (1/16)(2 * 16 - 16) = 1 = Rt
    CHECK(moving.stations[10].ds_R2dp0() == doctest::Approx(16.0));
  }

  TEST_CASE("grouped-order residuals are exactly zero in rational arithmetic") {
    std::mt19937 gen(2024);
    for (int trial = 0; trial < 5; ++trial) {
      for (const auto& item : grouped_order_residuals(random_station(gen))) {
        INFO(item.problem << " " << item.part);
        CHECK(item.exact_zero);
      }
    }
  }

  TEST_CASE("residuals detect a perturbed field") {
    std::mt19937 gen(5);
    auto st = random_station(gen);
    st.Rt += Q(1);  // breaks the wall-velocity trace of U1
    bool any = false;
    for (const auto& item : grouped_order_residuals(st)) any = any || !item.exact_zero;
    CHECK(any);
  }

  TEST_CASE("convergence studies") {
    const auto c = run_convergence_study(constant_p0_case(), {50, 100, 200});
    CHECK(c.floor_detected);
    for (const auto& row : c.rows) CHECK(row.error <= 1e-13);
    for (const auto& cs : {nonuniform_p0_case(), nonuniform_p1_case(), nonuniform_p02_case()}) {
      const auto s = run_convergence_study(cs, {50, 100, 200, 400});
      INFO(s.name);
      CHECK(s.observed_order == doctest::Approx(2.0).epsilon(0.1));
      CHECK_FALSE(s.floor_detected);
    }
  }
}
