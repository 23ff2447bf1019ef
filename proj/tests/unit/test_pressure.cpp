#include "cpipe/errors.hpp"
#include "cpipe/geometry.hpp"
#include "cpipe/pressure.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace cpipe;

namespace {

WallState wall_from(double L, std::size_t n, const std::function<double(double)>& R, double Rt = 0.0) {
  const UniformGrid g(L, n);
  std::vector<double> r(n), rt(n, Rt);
  for (std::size_t i = 0; i < n; ++i) r[i] = R(g.node(i));
  return WallState::from_radius(g, r, rt, 0.0);
}

double max_abs_diff(const std::vector<double>& a, const std::function<double(std::size_t)>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b(i)));
  return m;
}

}  // namespace

TEST_SUITE("pressure") {
  TEST_CASE("constant radius gives a linear p0") {
    const auto w = wall_from(1.0, 11, [](double) { return 1.0; });
    const auto d = solve_p0(w, FluidParams{}, PressureBC{});
    CHECK(max_abs_diff(d.p0, [&](std::size_t i) { return 1.0 - w.grid.node(i); }) < 1e-14);
    CHECK(max_abs_diff(d.dp0, [](std::size_t) { return -1.0; }) < 1e-13);
  }

  TEST_CASE("tapered radius against the closed form") {
    // p0' = C / R^4 = C (1 + s), p0(1) = 1  =>  p0 = (2/3)(s + s^2/2)
    const auto w = wall_from(1.0, 2001, [](double s) { return std::pow(1.0 + s, -0.25); });
    PressureBC bc;
    bc.p0 = {0.0, 1.0};
    const auto d = solve_p0(w, FluidParams{}, bc);
    CHECK(std::abs(d.p0[1000] - 2.0 / 3.0 * (0.5 + 0.125)) < 1e-6);
  }

  TEST_CASE("moving wall parabola") {
    const auto w = wall_from(1.0, 21, [](double) { return 1.0; }, 1.0);
    PressureBC bc;
    bc.p0 = {0.0, 0.0};
    const auto d = solve_p0(w, FluidParams{}, bc);
    CHECK(std::abs(d.p0[10] + 2.0) < 1e-8);
    CHECK(max_abs_diff(d.p0, [&](std::size_t i) {
            const double s = w.grid.node(i);
            return 8 * s * s - 8 * s;
          }) < 1e-12);
    CHECK(max_abs_diff(d.d2p0, [](std::size_t) { return 16.0; }) < 1e-10);
  }

  TEST_CASE("p1") {
    const auto w = wall_from(1.0, 51, [](double s) { return std::pow(1.0 + s, -0.25); });
    const auto zero = solve_p1(w, FluidParams{}, PressureBC{});
    CHECK(max_abs_diff(zero.p1, [](std::size_t) { return 0.0; }) == 0.0);
    PressureBC bc;
    bc.p0 = {0.0, 1.0};
    bc.p1 = {1.0, 0.0};
    const auto p1 = solve_p1(w, FluidParams{}, bc);
    const auto p0 = solve_p0(w, FluidParams{}, bc);
    // same operator, swapped data: p1 = 1 - p0
    CHECK(max_abs_diff(p1.p1, [&](std::size_t i) { return 1.0 - p0.p0[i]; }) < 1e-13);
    const auto flat = wall_from(1.0, 51, [](double) { return 1.0; });
    const auto lin = solve_p1(flat, FluidParams{}, bc);
    CHECK(max_abs_diff(lin.p1, [&](std::size_t i) { return 1.0 - flat.grid.node(i); }) < 1e-14);
  }

  TEST_CASE("p0^2 vanishes for a straight rigid pipe") {
    const auto curve = CenterCurve::straight(1.0);
    const auto w = wall_from(1.0, 41, [](double) { return 1.0; });
    const auto pe = solve_pressures(w, curve, FluidParams{}, BodyForce{}, PressureBC{}, true);
    CHECK(max_abs_diff(pe.p02.bracket, [](std::size_t) { return 0.0; }) < 1e-14);
    CHECK(max_abs_diff(pe.p02.p02, [](std::size_t) { return 0.0; }) < 1e-14);
    BodyForce b;
    b.b01 = 3.0;
    const auto pb = solve_pressures(w, curve, FluidParams{}, b, PressureBC{}, true);
    CHECK(max_abs_diff(pb.p02.p02, [](std::size_t) { return 0.0; }) < 1e-13);
  }

  TEST_CASE("p0^2 bracket against an independent assembly") {
    const double rho = 1.3, nu = 0.7, kappa = 0.4, b01 = 0.25;
    auto R = [](double s) { return 1.0 + 0.2 * std::sin(s); };
    auto Rt = [](double s) { return 0.1 * std::cos(2 * s); };
    auto dp0 = [](double s) { return -1.0 + 0.3 * s * s; };
    auto dtdp0 = [](double s) { return 0.05 * s; };
    for (double s : {0.3, 0.8, 1.4}) {
      Station<double> st;
      st.R = R(s);
      st.dR = 0.2 * std::cos(s);
      st.d2R = -0.2 * std::sin(s);
      st.Rt = Rt(s);
      st.kappa = kappa;
      st.rho = rho;
      st.nu = nu;
      st.dp0 = dp0(s);
      st.d2p0 = 0.6 * s;
      st.d3p0 = 0.6;
      st.dtdp0 = dtdp0(s);
      st.b01 = b01;
      // terms grouped by powers of R
      const double r = R(s), dr = 0.2 * std::cos(s), ddr = -0.2 * std::sin(s);
      const double p = dp0(s), dp = 0.6 * s, ddp = 0.6;
      const double oracle = std::pow(r, 8) * (-3.0 / (64 * rho * nu * nu) * p * dp) +
                            std::pow(r, 7) * (-dr * p * p / (8 * rho * nu * nu)) +
                            std::pow(r, 6) * (-ddp / 12 - kappa * kappa * p / 48 + dtdp0(s) / (6 * nu)) +
                            std::pow(r, 5) * (Rt(s) * p / (2 * nu) - ddr * p / 2 - dr * dp) +
                            std::pow(r, 4) * (-dr * dr * p / 2 + rho * b01);
      CHECK(p02_bracket(st) == doctest::Approx(oracle).epsilon(1e-13));
    }
  }

  TEST_CASE("unsteady p0^2 needs the time derivative") {
    const auto curve = CenterCurve::straight(1.0);
    const auto w = wall_from(1.0, 11, [](double) { return 1.0; });
    auto p0 = solve_p0(w, FluidParams{}, PressureBC{});
    p0.dtdp0.clear();
    CHECK_THROWS_AS(p02_bracket_nodes(w, curve, FluidParams{}, p0, BodyForce{}, false), ConfigError);
    CHECK_NOTHROW(p02_bracket_nodes(w, curve, FluidParams{}, p0, BodyForce{}, true));
  }

  TEST_CASE("flux solver input errors") {
    const UniformGrid g(1.0, 5);
    CHECK_THROWS_AS(solve_flux_bvp(g, {1, 1, -1, 1, 1}, {}, {}, 0, 1), SolverError);
    CHECK_THROWS_AS(BoundaryValue::series({{0.0, 1.0}, {0.0, 2.0}}), ConfigError);
    const auto b = BoundaryValue::series({{0.0, 1.0}, {1.0, 3.0}});
    CHECK(b.at(0.5) == doctest::Approx(2.0));
    CHECK(b.at(2.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(FluidParams({-1.0, 1.0}).validate(), ConfigError);
  }

  TEST_CASE("time derivative of p0' by backward difference") {
    const auto w0 = wall_from(1.0, 11, [](double) { return 1.0; });
    const auto first = solve_p0(w0, FluidParams{}, PressureBC{});
    CHECK(max_abs_diff(first.dtdp0, [](std::size_t) { return 0.0; }) == 0.0);
    PressureBC bc;
    bc.p0 = {2.0, 0.0};
    const auto second = solve_p0(w0, FluidParams{}, bc, &first.dp0, 0.5);
    CHECK(max_abs_diff(second.dtdp0, [](std::size_t) { return -2.0; }) < 1e-12);
  }
}
