#include "cpipe/config.hpp"
#include "cpipe/errors.hpp"
#include "cpipe/export.hpp"
#include "cpipe/pipeline.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

using namespace cpipe;
namespace fs = std::filesystem;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cpipe_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CPIPE_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string kConfigs = std::string(CPIPE_SOURCE_DIR) + "/configs/";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config parsing") {
    const auto cfg = parse(
        "# comment\n"
        "geometry.kind = arc\n"
        "geometry.arc_radius = 3   # trailing\n"
        "wall.law = elastic\n"
        "bc.p0.inlet = 0:1, 0.5:2\n"
        "output.stations = 0.25, 0.75\n"
        "output.fields = u1_0, U2\n"
        "time.steady = false\n");
    CHECK(cfg.geometry_kind == "arc");
    CHECK(cfg.arc_radius == 3.0);
    CHECK(cfg.wall_law == "elastic");
    CHECK(cfg.bc.p0.inlet.at(0.25) == doctest::Approx(1.5));
    CHECK(cfg.bc.p0.outlet.at(0.0) == 0.0);
    CHECK(cfg.stations == std::vector<double>{0.25, 0.75});
    CHECK(cfg.fields == std::vector<std::string>{"u1_0", "U2"});
    CHECK_FALSE(cfg.steady);
    CHECK(cfg.n_s1 == 101);
  }

  TEST_CASE("config errors") {
    try {
      parse("epsilon = 0.1\nwall.stifness = 3\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("test.cfg:2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("epsilon = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse("grid.n_disc = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse("epsilon = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse("output.fields = vorticity\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ConfigError);
  }

  TEST_CASE("sampling") {
    const DiscGrid grid{8};
    const auto one = DiscPoly<double>::constant(1.0);
    const auto rows = sample_field(one, grid);
    CHECK(rows.size() == 8 * 32);
    for (const auto& r : rows) CHECK(r[2] == 1.0);
    // first row sits on the innermost ring, angle 0
    CHECK(rows[0][0] == doctest::Approx(1.0 / 16));
    CHECK(rows[0][1] == doctest::Approx(0.0));

    Station<double> st;
    st.dp0 = -1.0;
    const auto f = compute_fields(st, 0);
    for (const auto& r : sample_field(f.u1_0, grid)) {
      const double rr = r[0] * r[0] + r[1] * r[1];
      CHECK(r[2] == doctest::Approx((1.0 - rr) / 4.0).epsilon(1e-14));
    }
    for (const auto& r : sample_field(VecPoly<double>{}, grid)) {
      CHECK(r[2] == 0.0);
      CHECK(r[3] == 0.0);
    }
    CHECK_THROWS_AS(sample_field(one, DiscGrid{4}), ConfigError);
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.1) == "0.10000000000000001");
  }

  TEST_CASE("coefficient files round-trip") {
    const auto dir = scratch("poly");
    Station<double> st;
    st.dp0 = -1.3;
    st.kappa = 0.7;
    st.tau = 0.4;
    st.dR = 0.2;
    st.Rt = 0.3;
    st.d2p0 = 0.5;
    const auto f = compute_fields(st, 2);
    write_poly_csv(dir / "u.csv", f.u1_1);
    write_poly_csv(dir / "U.csv", f.U2);
    const auto u = read_scalar_poly_csv(dir / "u.csv");
    const auto U = read_vector_poly_csv(dir / "U.csv");
    double worst = 0.0;
    for (double z2 : {-0.6, 0.0, 0.3})
      for (double z3 : {-0.2, 0.5}) {
        worst = std::max(worst, std::abs(u.evaluate(z2, z3) - f.u1_1.evaluate(z2, z3)));
        worst = std::max(worst, std::abs(U.x.evaluate(z2, z3) - f.U2.x.evaluate(z2, z3)));
        worst = std::max(worst, std::abs(U.y.evaluate(z2, z3) - f.U2.y.evaluate(z2, z3)));
      }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("straight pipe run") {
    auto cfg = load_config(kConfigs + "straight_rigid.cfg");
    const auto run = run_pipeline(cfg);
    const auto v = verify_run(run);
    CHECK(v.passed());
    const std::size_t mid = run.output_nodes.at(0);
    CHECK(run.flow.Q0[mid] == doctest::Approx(std::numbers::pi / 8).epsilon(1e-12));
    CHECK(run.fields[mid].u1_1.max_abs_coeff() == 0.0);
    CHECK(run.fields[mid].U2.x.max_abs_coeff() == 0.0);
  }

  TEST_CASE("outputs are deterministic") {
    auto cfg = load_config(kConfigs + "curved_rigid.cfg");
    std::string first, second;
    for (std::string* dst : {&first, &second}) {
      const auto dir = scratch(dst == &first ? "det_a" : "det_b");
      const auto run = run_pipeline(cfg);
      auto summary = export_fields(run, dir);
      export_line_data(run, dir, summary);
      CHECK(summary.roundtrip_max_diff <= 1e-12);
      std::vector<fs::path> files;
      for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) files.push_back(fs::relative(e.path(), dir));
      std::sort(files.begin(), files.end());
      for (const auto& f : files) *dst += f.string() + "\n" + slurp(dir / f);
    }
    CHECK(!first.empty());
    CHECK(first == second);
  }

  TEST_CASE("exit codes") {
    const auto dir = scratch("exit");
    CHECK(run_cli("tables") == 0);
    CHECK(run_cli("solve --config " + kConfigs + "straight_rigid.cfg --out " + (dir / "a").string()) == 0);
    CHECK(run_cli("solve --config " + (dir / "missing.cfg").string()) == 1);
    CHECK(run_cli("frobnicate") == 1);
    {
      std::ofstream loose(dir / "loose.cfg");
      loose << slurp(kConfigs + "elastic.cfg") << "\ncoupling.tolerance = 1e-3\n";
    }
    CHECK(run_cli("solve --config " + (dir / "loose.cfg").string() + " --out " + (dir / "b").string()) == 2);
  }
}
